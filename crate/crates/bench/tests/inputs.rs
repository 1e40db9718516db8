use bmult_bench::{matrix_rows, presentation, words};

#[test]
fn benchmark_inputs_are_well_formed() {
    let p = presentation("phi9_skeleton?p=5&variant=a_like");
    for w in words(p.len(), 8, 24) {
        assert_eq!(w.len(), 24);
        assert!(w.iter().all(|&(g, e)| g < p.len() && (-3..=3).contains(&e)));
    }
    let m = matrix_rows(12, 16, 9);
    assert_eq!(m.len(), 12);
    assert!(m.iter().all(|r| r.len() == 16 && r.iter().all(|x| x.abs() <= 9)));
    assert!(m.iter().flatten().any(|&x| x != 0));
}
