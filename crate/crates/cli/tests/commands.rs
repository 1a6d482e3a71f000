use quasiconst::Side;
use quasiconst_cli::commands::{
    cmd_bounds, cmd_check, cmd_classify, cmd_describe, cmd_dualize, cmd_table, cmd_verify_box, cmd_verify_chain,
    cmd_verify_duality,
};
use quasiconst_cli::input::{load_shorthand, parse_index_set, parse_vector, DatumSpecFile};
use quasiconst_cli::report::{table_markdown, table_tsv, Body, Verify, WitnessOut};
use quasiconst_cli::{BoundsTarget, LoadedDatum, Predicate, Report};

fn load(t: &str) -> LoadedDatum {
    load_shorthand(t, "sc", None).unwrap()
}

fn round_trip(r: &Report) {
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(&back, r);
}

fn check(t: &str, v: &str, p: Predicate) -> Report {
    let ld = load(t);
    let v = parse_vector(&ld.datum, v, Side::Character).unwrap();
    let r = cmd_check(&ld, &v, &p, true).unwrap();
    round_trip(&r);
    r
}

#[test]
fn describe_reports_special_vertices() {
    let r = cmd_describe(&load("C3")).unwrap();
    round_trip(&r);
    let Body::Describe(d) = &r.body else { panic!() };
    assert_eq!(d.factors[0].special, vec!["α3"]);
    assert_eq!(d.factors[0].cospecial, vec!["α1"]);
    assert_eq!(d.factors[0].m, vec![2, 2, 1]);

    let r = cmd_describe(&load("A1")).unwrap();
    let Body::Describe(d) = &r.body else { panic!() };
    assert_eq!(d.num_roots, 2);
    assert_eq!(d.cartan_matrix, vec![vec![2]]);

    let r = cmd_describe(&load("G2")).unwrap();
    let Body::Describe(d) = &r.body else { panic!() };
    assert!(d.factors[0].special.is_empty());
}

#[test]
fn g2_first_weight_has_witness() {
    let r = check("G2", "fw:[1,0]", Predicate::QuasiConstant);
    assert!(!r.passed);
    assert_eq!(r.exit_code(), 1);
    let Body::Check(c) = &r.body else { panic!() };
    let Some(WitnessOut::CorootPair { values, .. }) = &c.witness else { panic!("{c:?}") };
    assert_eq!(values, &["1".to_string(), "2".to_string()]);
}

#[test]
fn predicate_examples() {
    assert!(check("A4", "fw:[0,1,0,0]", Predicate::Minuscule).passed);
    assert!(check("B4", "fw:[0,1,0,0]", Predicate::PClose(3)).passed);
    assert!(!check("B4", "fw:[0,1,0,0]", Predicate::PClose(2)).passed);
    assert!(check("C3", "fw:[0,0,1]", Predicate::Cominuscule).passed);
    assert!(!check("C3", "fw:[0,0,1]", Predicate::Minuscule).passed);

    let ld = load("A3");
    let levi = parse_index_set(&ld.datum, "1,3").unwrap();
    let v = parse_vector(&ld.datum, "fw:[0,-1,0]", Side::Character).unwrap();
    let r = cmd_check(&ld, &v, &Predicate::Ample(levi.clone()), true).unwrap();
    round_trip(&r);
    assert!(r.passed);
    let r = cmd_check(&ld, &v, &Predicate::Admissible(2, levi), true).unwrap();
    assert!(r.passed);
}

#[test]
fn non_integral_vector_is_rejected() {
    let ld = load("A2");
    let v = parse_vector(&ld.datum, "amb:[1/2,0,-1/2]", Side::Character).unwrap();
    assert!(cmd_check(&ld, &v, &Predicate::QuasiConstant, true).is_err());
    assert!(cmd_check(&ld, &v, &Predicate::QuasiConstant, false).is_ok());
}

#[test]
fn classify_round_trips() {
    let ld = load_shorthand("B2xB2", "sc", Some("swap:1..2,3..4")).unwrap();
    for (text, qc) in [("fw:[1,0,1,0]", true), ("fw:[1,0,0,1]", false), ("fw:[1,0,2,0]", false)] {
        let v = parse_vector(&ld.datum, text, Side::Character).unwrap();
        let r = cmd_classify(&ld, &v).unwrap();
        round_trip(&r);
        assert_eq!(r.passed, qc, "{text}");
        let Body::Classify(c) = &r.body else { panic!() };
        assert_eq!(c.witness.is_some(), !qc);
    }
}

#[test]
fn dualize_last_coweight_of_cn() {
    for n in 2..=6 {
        let ld = load(&format!("C{n}"));
        let mut c = vec!["0"; n];
        c[n - 1] = "1";
        let v = parse_vector(&ld.datum, &format!("fw:[{}]", c.join(",")), Side::Cocharacter).unwrap();
        let r = cmd_dualize(&ld, &v).unwrap();
        round_trip(&r);
        let Body::Dualize(d) = &r.body else { panic!() };
        assert_eq!(d.output.label, format!("ray η(α{n})"));
        assert_eq!(d.output.side, "character");
        assert_eq!(d.input.label, format!("ray η(α{n}∨)"));
    }
}

#[test]
fn bounds_round_trip() {
    let ld = load("E8");
    let excluded = parse_index_set(&ld.datum, "1,3,4").unwrap();
    let r = cmd_bounds(&ld, &BoundsTarget::Excluded(excluded)).unwrap();
    round_trip(&r);
    let Body::Bounds(b) = &r.body else { panic!() };
    assert_eq!(b.rows[0].ratio, "12");
    assert_eq!(b.rows[0].c, 11);
    assert!(b.rows[0].sufficiency_only);

    let r = cmd_bounds(&load("F4"), &BoundsTarget::AllMaximal).unwrap();
    round_trip(&r);
    let Body::Bounds(b) = &r.body else { panic!() };
    assert_eq!(b.rows.iter().map(|x| x.c).collect::<Vec<_>>(), vec![2, 3, 3, 2]);
    assert!(cmd_bounds(&load("B2xB2"), &BoundsTarget::AllMaximal).is_err());
}

#[test]
fn table_is_deterministic() {
    let a = cmd_table(8, true).unwrap();
    let b = cmd_table(8, true).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    round_trip(&a);
    let Body::Table(t) = &a.body else { panic!() };
    assert_eq!(t.rows.len(), 19);
    let tsv = table_tsv(t);
    assert!(tsv.starts_with("type\tsimple roots\tC\n"));
    assert!(tsv.contains("E8\tα4, α5\t5\n"));
    assert!(table_markdown(t).contains("| F4 | α2, α3 | 3 |"));
    assert!(cmd_table(1, false).is_err());
}

#[test]
fn verify_modes() {
    let r = cmd_verify_box(&load("G2"), 4).unwrap();
    round_trip(&r);
    assert!(r.passed);
    let Body::Verify(Verify::Box { scanned, .. }) = &r.body else { panic!() };
    assert_eq!(*scanned, 81);

    let r = cmd_verify_duality(&load("D5"), 1).unwrap();
    round_trip(&r);
    assert!(r.passed);

    let r = cmd_verify_chain(&load("E7")).unwrap();
    round_trip(&r);
    assert!(r.passed);
}

#[test]
fn spec_file_with_galois() {
    let text = r#"{
        "factors": [{"type": "A", "rank": 2}, {"type": "A", "rank": 2}],
        "char_lattice": "sc",
        "galois": [[3, 4, 1, 2]]
    }"#;
    let ld = DatumSpecFile::parse(text).unwrap().load().unwrap();
    assert!(!ld.galois.is_trivial());
    let r = cmd_verify_box(&ld, 2).unwrap();
    assert!(r.passed);
}
