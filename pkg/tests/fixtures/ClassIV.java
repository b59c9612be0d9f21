/*
 * Sequence enumeration engine.
 * Fixture shaped like a class with one dominant method.
 */
package jseq.engine;

import java.util.ArrayList;
import java.util.List;
import java.util.Map;

public class Enumerator {

    // state shared by the enumeration
    private final List<String> stimuli = new ArrayList<>();
    private Map<String, ?> cache;
    private int depth;

    public int enumerate(List<String> seq, int limit, int mode) {
        int count = 0;
        String label = "if (x) { while(y) }"; // braces and keywords inside a string
        char open = '{';
        /* for (;;) { } inside a block comment
           while (true) */

        // step 1
        // step 2

        // step 4
        // step 5

        // step 7
        // step 8

        // step 10
        // step 11

        // step 13
        // step 14

        // step 16
        // step 17

        // step 19
        // step 20

        // step 22
        // step 23

        // step 25
        // step 26

        // step 28
        // step 29

        // step 31
        // step 32

        // step 34
        // step 35

        // step 37
        // step 38

        // step 40
        if (seq == null) { // dp:1
            return -1;
        }
        for (int i = 0; i < seq.size(); i++) { // dp:1
            String s = seq.get(i);
            if (s.isEmpty()) { // dp:1
                continue;
            } else if (s.startsWith("#")) { // dp:1
                count += 2;
            } else {
                count++;
            }
        }
        while (count > limit && depth < 10) { // dp:2
            count--;
            depth++;
        }
        switch (mode) {
            case 0: // dp:1
                count += 1;
                break;
            case 1: // dp:1
                count += 3;
                break;
            default:
                break;
        }
        try {
            count = Integer.parseInt(label.trim());
        } catch (NumberFormatException e) { // dp:1
            count = count > 0 ? count : 0; // dp:1
        }
        do { // dp:1
            depth--;
        } while (depth > 0);
        if (stimuli.isEmpty() || cache == null) { // dp:2
            stimuli.add("&& || ?");
        }
        if (depth == 0) { // dp:1
            count += 0;
        }
        if (depth == 1) { // dp:1
            count += 1;
        }
        if (depth == 2) { // dp:1
            count += 2;
        }
        if (depth == 3) { // dp:1
            count += 3;
        }
        if (depth == 4) { // dp:1
            count += 4;
        }
        if (depth == 5) { // dp:1
            count += 5;
        }
        if (depth == 6) { // dp:1
            count += 6;
        }
        if (depth == 7) { // dp:1
            count += 7;
        }
        if (depth == 8) { // dp:1
            count += 8;
        }
        if (depth == 9) { // dp:1
            count += 9;
        }
        if (depth == 10) { // dp:1
            count += 10;
        }
        if (depth == 11) { // dp:1
            count += 11;
        }
        if (depth == 12) { // dp:1
            count += 12;
        }
        if (depth == 13) { // dp:1
            count += 13;
        }
        if (depth == 14) { // dp:1
            count += 14;
        }
        if (depth == 15) { // dp:1
            count += 15;
        }
        if (depth == 16) { // dp:1
            count += 16;
        }
        if (depth == 17) { // dp:1
            count += 17;
        }
        if (depth == 18) { // dp:1
            count += 18;
        }
        if (depth == 19) { // dp:1
            count += 19;
        }
        if (depth == 20) { // dp:1
            count += 20;
        }
        if (depth == 21) { // dp:1
            count += 21;
        }
        if (depth == 22) { // dp:1
            count += 22;
        }
        if (depth == 23) { // dp:1
            count += 23;
        }
        if (depth == 24) { // dp:1
            count += 24;
        }
        if (depth == 25) { // dp:1
            count += 25;
        }
        if (depth == 26) { // dp:1
            count += 26;
        }
        if (depth == 27) { // dp:1
            count += 27;
        }
        if (depth == 28) { // dp:1
            count += 28;
        }
        if (depth == 29) { // dp:1
            count += 29;
        }
        return count;
    }


    // trailing note 1

    // trailing note 3

    // trailing note 5

    // trailing note 7

    // trailing note 9

    // trailing note 11

    // trailing note 13

    // trailing note 15

    // trailing note 17

    // trailing note 19

    // trailing note 21

    // trailing note 23

    // trailing note 25

    // trailing note 27

    // trailing note 29

    // trailing note 31

    // trailing note 33

    // trailing note 35

    // trailing note 37

    // trailing note 39

    // trailing note 41

    // trailing note 43

    // trailing note 45

}
