"""Independent set-comparison oracle for quality categories.

Written directly from the four textual category conditions, using plain
loops instead of set algebra so it shares no code path with the evaluator.
"""


def oracle_category(selected, prone):
    """Return 1..4, or None when no part is defect-prone."""
    selected = list(selected)
    prone = list(prone)
    if len(prone) == 0:
        return None
    all_prone_selected = True
    some_prone_selected = False
    for p in prone:
        if p in selected:
            some_prone_selected = True
        else:
            all_prone_selected = False
    clean_selected = False
    for s in selected:
        if s not in prone:
            clean_selected = True
    if all_prone_selected and not clean_selected:
        return 1
    if all_prone_selected and clean_selected:
        return 2
    if some_prone_selected:
        return 3
    return 4
