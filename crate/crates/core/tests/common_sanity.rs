mod common;

#[test]
fn set_counts() {
    assert_eq!(common::sets_with_zero(6, 3).len(), 10);
    assert_eq!(common::sets_with_zero(3, 1), vec![vec![0]]);
    assert_eq!(common::weight_codes(3, 2).len(), 1);
}
