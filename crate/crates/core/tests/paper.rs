use snarklab_core::paper::verify_paper;

#[test]
fn every_reproduction_check_passes() {
    let report = verify_paper();
    for row in &report.rows {
        assert!(
            row.passed,
            "{}: expected {}, got {}",
            row.name, row.expected, row.actual
        );
    }
    assert!(report.rows.len() >= 12);
}
