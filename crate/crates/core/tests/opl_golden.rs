use orient6_core::hexgrid::fixture_h4;
use orient6_core::opl::export_opl_data;
use orient6_core::tournament::five_tournament;

const GOLDEN: &str = include_str!("golden/h4_t5.dat");

/// Drops `//` lines and trailing whitespace, as documented in the golden file.
fn normalize(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("//"))
        .map(|l| format!("{}\n", l.trim_end()))
        .collect()
}

#[test]
fn h4_t5_data_matches_golden() {
    let out = export_opl_data(&fixture_h4().graph, &five_tournament(5)).unwrap();
    assert_eq!(normalize(&out), normalize(GOLDEN));
    // nothing to strip on our side
    assert_eq!(normalize(&out), out);
}
