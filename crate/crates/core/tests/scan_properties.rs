use algheight::bounds::{garza_bound, schinzel_bound};
use algheight::heights::height_profile;
use algheight::scan::{run_scan, ExtremalTable, ScanConfig};
use algheight::IntPoly;

fn scan(d: usize, c: i64, workers: usize) -> algheight::scan::ScanOutcome {
    let mut cfg = ScanConfig::new(d, c);
    cfg.workers = workers;
    run_scan(&cfg).unwrap()
}

#[test]
fn desk_scale_scan_is_clean_and_deterministic() {
    let one = scan(4, 5, 1);
    let four = scan(4, 5, 4);
    assert!(one.passed());
    assert!(one.violations.is_empty() && one.exceptions.is_empty());
    assert!(one.identity_failures.is_empty());
    assert_eq!(one.candidates, four.candidates);
    assert_eq!(one.eligible, four.eligible);
    assert_eq!(one.table.to_csv(), four.table.to_csv());
    assert_eq!(one.table.to_json(), four.table.to_json());

    // Only the (2, 2) cell meets the bound; every other cell is strictly away.
    for row in one.table.rows() {
        if (row.d, row.r) == (2, 2) {
            assert!(row.margin.abs() <= 1e-9);
            assert!((row.height - schinzel_bound()).abs() <= 1e-9);
            let golden = IntPoly::from_i64s(&[-1, -1, 1]).unwrap();
            assert!(row.poly == golden || row.poly == golden.mirror(), "{}", row.poly);
        } else {
            assert!(row.margin > 1e-4, "({}, {}): {}", row.d, row.r, row.margin);
        }
        let b = garza_bound(*row.ratio.numer() as f64 / *row.ratio.denom() as f64).unwrap();
        assert_eq!(row.bound, b);
        assert!(row.margin >= -1e-9);
    }
    assert!(one.stats.min_final_slack >= -1e-9);
}

#[test]
fn table_rows_recompute_and_round_trip() {
    let out = scan(3, 3, 2);
    for row in out.table.rows() {
        let prof = height_profile(&row.poly).unwrap();
        assert_eq!((prof.d, prof.r), (row.d, row.r));
        assert_eq!(prof.height, row.height);
    }
    let json = out.table.to_json();
    let back = ExtremalTable::from_json(&json).unwrap();
    assert_eq!(back.to_csv(), out.table.to_csv());
}

#[test]
fn monic_scan_is_a_subset() {
    let all = scan(3, 3, 1);
    let mut cfg = ScanConfig::new(3, 3);
    cfg.monic_only = true;
    let monic = run_scan(&cfg).unwrap();
    assert!(monic.candidates < all.candidates);
    for row in monic.table.rows() {
        assert!(row.poly.is_monic());
        let best = all.table.get(row.d, row.r).unwrap();
        assert!(best.height <= row.height);
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    let mut cfg = ScanConfig::new(9, 2);
    assert!(run_scan(&cfg).is_err());
    cfg = ScanConfig::new(0, 2);
    assert!(run_scan(&cfg).is_err());
    cfg = ScanConfig::new(2, 0);
    assert!(run_scan(&cfg).is_err());
    cfg = ScanConfig::new(2, 2);
    cfg.workers = 0;
    assert!(run_scan(&cfg).is_err());
}
