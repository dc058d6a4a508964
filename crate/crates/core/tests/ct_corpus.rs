use ibis_core::catalog::{self, alt_natural, psl2, psl3_2_on_7};
use ibis_core::ct::{
    centralizer_abelian_scan, dihedral_trivial_intersection_witness, is_ct_centralizer_partition, is_ct_transitivity,
    DEFAULT_CT_CAP,
};
use ibis_core::{Bsgs, Limits, PermGroup};

fn corpus() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("Alt(5)", alt_natural(5).unwrap()),
        ("PSL(2,7)", psl3_2_on_7()),
        ("Alt(6)", alt_natural(6).unwrap()),
        ("PSL(2,8)", psl2(8).unwrap()),
        ("PSL(2,11)", psl2(11).unwrap()),
        ("PSL(2,13)", psl2(13).unwrap()),
        ("Alt(7)", alt_natural(7).unwrap()),
    ]
}

#[test]
fn exactly_alt5_and_psl2_8_are_ct() {
    let mut ct = Vec::new();
    for (name, g) in corpus() {
        let b = Bsgs::new(&g);
        let t = is_ct_transitivity(&b, DEFAULT_CT_CAP).unwrap();
        let p = is_ct_centralizer_partition(&b, DEFAULT_CT_CAP).unwrap();
        assert!(t.method_agreement && p.method_agreement, "{name}");
        assert_eq!(t.is_ct, p.is_ct, "{name}");
        assert_eq!(centralizer_abelian_scan(&b, DEFAULT_CT_CAP).unwrap(), t.is_ct, "{name}");
        assert_eq!(t.violation.is_none(), t.is_ct);
        if let Some((a, s, c)) = t.violation {
            assert!(a.commutes_with(&s) && s.commutes_with(&c) && !a.commutes_with(&c));
        }
        if t.is_ct {
            ct.push(name);
        }
    }
    assert_eq!(ct, ["Alt(5)", "PSL(2,8)"]);
}

#[test]
fn catalog_names_resolve_to_the_same_verdicts() {
    let l = Limits::default();
    for (name, want) in [("psl2:4", true), ("psl2:8", true), ("alt:7", false), ("psl2:9", false)] {
        let b = Bsgs::new(&catalog::resolve(name, &l).unwrap());
        assert_eq!(is_ct_transitivity(&b, DEFAULT_CT_CAP).unwrap().is_ct, want, "{name}");
    }
}

#[test]
fn dihedral_subgroups_meeting_trivially() {
    for q in [8, 16] {
        let d = dihedral_trivial_intersection_witness(q).unwrap();
        assert_eq!(d.orders, (2 * (q - 1), 2 * (q - 1)));
        assert_eq!(d.intersection_order, 1);
        assert!(d.maximal);
        assert_ne!(d.first, d.second);
    }
}
