use std::path::PathBuf;

use proptest::prelude::*;

use rtype::cli::DomainFile;
use rtype::engine::{compose_order, line_type, multitype, q_types, regular_type, Disc, OracleConfig, LatticePreset, TypeKind};
use rtype::exact::scalar::*;
use rtype::exact::{ExactComplex, Vanishing};
use rtype::geometry::{local_germ_at, BoundaryPoint, DomainSpec, LocalGerm};
use rtype::germ::{parse_expr, to_germ};

fn corpus(name: &str) -> DomainFile {
    DomainFile::load(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)).unwrap()
}

/// `((a² - b²) + 2abi) / (a² + b²)`, a rational point on the unit circle.
fn unit(a: i64, b: i64) -> ExactComplex {
    let d = a * a + b * b;
    cx(rat(a * a - b * b, d), rat(2 * a * b, d))
}

fn local(text: &str, p: Vec<ExactComplex>) -> LocalGerm {
    let g = to_germ(&parse_expr(text, p.len()).unwrap(), p.clone()).unwrap();
    let d = DomainSpec::new(g, None).unwrap();
    let bp = BoundaryPoint::new(&d, p).unwrap();
    local_germ_at(&d, &bp, 13).unwrap()
}

const MIXED: &str = "|z1|^2 + |z2|^2 + |z2|^2*|z3|^4 + |z3|^6 - 2";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn types_invariant_under_rotation(a in 1i64..6, b in 0i64..6, c in 1i64..6, d in 0i64..6) {
        let base = local(MIXED, vec![cone(), cone(), czero()]);
        let rot = local(MIXED, vec![unit(a, b), unit(c, d), czero()]);
        prop_assert_eq!(regular_type(&base, 12).unwrap().kind, regular_type(&rot, 12).unwrap().kind);
        prop_assert_eq!(line_type(&base, 12).unwrap().kind, line_type(&rot, 12).unwrap().kind);
    }

    #[test]
    fn witnesses_check_out(a in 1i64..6, b in 0i64..6) {
        let l = local("|z1|^2 + |z2|^6 + |z3|^6 + |z2*z3|^2 - 1", vec![unit(a, b), czero(), czero()]);
        let t = regular_type(&l, 12).unwrap();
        let w = t.witness.unwrap();
        let v = w.v().unwrap();
        prop_assert_eq!(compose_order(&l.germ, &w).unwrap(), Vanishing::Order(6 * v as usize));
    }

    #[test]
    fn composition_order_ignores_disc_rotation(a in 1i64..5, b in 0i64..5, k in 1usize..4) {
        let l = local(MIXED, vec![cone(), cone(), czero()]);
        let u = unit(a, b);
        let mut uk = cone();
        for _ in 0..k {
            uk = &uk * &u;
        }
        let d1 = Disc::polynomial(l.base_point(), &[vec![], vec![], vec![czero(); k - 1].into_iter().chain([cone()]).collect()], 13).unwrap();
        let d2 = Disc::polynomial(l.base_point(), &[vec![], vec![], vec![czero(); k - 1].into_iter().chain([uk]).collect()], 13).unwrap();
        prop_assert_eq!(compose_order(&l.germ, &d1).unwrap(), compose_order(&l.germ, &d2).unwrap());
    }
}

#[test]
fn q_types_are_deterministic() {
    let l = corpus("remark5_2.dom").local_germ(13).unwrap();
    let cfg = OracleConfig::new(2, LatticePreset::Small, 300);
    let a = q_types(&l, 12, 9, &cfg).unwrap();
    let b = q_types(&l, 12, 9, &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn line_never_exceeds_regular() {
    for name in ["decoupled.dom", "mixed3.dom", "remark5_1.dom", "remark5_2.dom", "rotated.dom", "sphere2.dom", "sphere3_infinite.dom"] {
        let l = corpus(name).local_germ(13).unwrap();
        let line = line_type(&l, 12).unwrap().kind;
        let reg = regular_type(&l, 12).unwrap().kind;
        assert_ne!(line.cmp_certain(&reg), Some(std::cmp::Ordering::Greater), "{name}: line {line} > regular {reg}");
    }
}

#[test]
fn multitype_below_q_types() {
    let cfg = OracleConfig::new(2, LatticePreset::Small, 300);
    let mut strict = false;
    for name in ["decoupled.dom", "remark5_2.dom", "sphere2.dom"] {
        let l = corpus(name).local_germ(13).unwrap();
        let q = q_types(&l, 12, 0, &cfg).unwrap();
        let m = multitype(&l).unwrap();
        assert_eq!(q.values[0].kind, TypeKind::exact(1));
        for (i, mi) in m.entries.iter().enumerate() {
            let delta = &q.values[i].kind;
            match (mi, delta.as_exact()) {
                (Some(mi), Some(d)) => {
                    assert!(mi <= d, "{name}: entry {i}");
                    strict |= mi < d;
                }
                (None, d) => assert!(d.is_none(), "{name}: entry {i}"),
                _ => {}
            }
        }
    }
    assert!(strict);
}
