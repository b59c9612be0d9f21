"""
Product metrics from source text
================================

Lines of code, method length and McCabe complexity for C-family sources,
computed with a small lexer that ignores strings and comments.
"""

from in2test.code_metrics import count_loc, cyclomatic, extract_methods, extract_part_metrics

source = '''
/* Account handling */
class Account {
    private int balance;

    // deposit never fails
    void deposit(int amount) {
        balance += amount;
    }

    boolean withdraw(int amount) {
        if (amount <= 0 || amount > balance) {
            log("if rejected");  // keywords in strings do not count
            return false;
        }
        for (int i = 0; i < 3; i++) {
            audit(i > 1 ? "late" : "early");
        }
        balance -= amount;
        return true;
    }
}
'''

print(count_loc(source))

###############################################################################
# Each method span reports its lines and decision points.

for m in extract_methods(source):
    print(f"{m.name:10} lines {m.start_line}-{m.end_line} ({m.length})  cyclomatic {cyclomatic(m)}")

###############################################################################
# Per-part metrics: total lines, mean method length and the McCabe value of the
# most complex method.

print(extract_part_metrics(source))
print(extract_part_metrics(source, aggregate="sum"))
