use gaussint::{crt, factor_ideal, residues_mod, GaussianInt};

fn g(a: i64, b: i64) -> GaussianInt {
    GaussianInt::from_i64s(a, b)
}

#[test]
fn factor_examples() {
    let f = factor_ideal(&g(1, 1)).unwrap();
    assert_eq!(f.factors.len(), 1);
    assert_eq!((f.factors[0].0.pi.clone(), f.factors[0].1), (g(1, 1), 1));
    let f = factor_ideal(&g(2, 0)).unwrap();
    assert_eq!((f.factors[0].0.pi.clone(), f.factors[0].1), (g(1, 1), 2));
    assert_eq!(&f.unit() * &f.product(), g(2, 0));
    let f = factor_ideal(&g(5, 0)).unwrap();
    let pis: Vec<GaussianInt> = f.factors.iter().map(|(p, _)| p.pi.clone()).collect();
    assert_eq!(pis.len(), 2);
    assert!(pis.iter().any(|p| p.is_associate(&g(2, 1))));
    assert!(pis.iter().any(|p| p.is_associate(&g(2, -1))));
    assert!(factor_ideal(&g(0, 0)).is_err());
    assert!(factor_ideal(&g(0, -1)).unwrap().is_unit_ideal());
    assert_eq!(
        serde_json::to_string(&factor_ideal(&g(2, 0)).unwrap()).unwrap(),
        r#"[{"pi":["1","1"],"e":2}]"#
    );
}

#[test]
fn factorizations_multiply_back() {
    for a in -12..=12 {
        for b in -12..=12 {
            let z = g(a, b);
            if a == 0 && b == 0 {
                continue;
            }
            let f = factor_ideal(&z).unwrap();
            assert_eq!(&f.unit() * &f.product(), z);
            assert!(f.unit().is_unit());
        }
    }
}

#[test]
fn crt_examples() {
    let z = crt(&[(g(0, 0), g(1, 1)), (g(1, 0), g(2, 1))]).unwrap();
    assert!(g(1, 1).divides(&z));
    assert!(g(2, 1).divides(&(&z - &g(1, 0))));
    // the unique solution in a residue system of the product
    let all: Vec<GaussianInt> = residues_mod(&g(1, 3))
        .unwrap()
        .into_iter()
        .filter(|w| g(1, 1).divides(w) && g(2, 1).divides(&(w - &g(1, 0))))
        .collect();
    assert_eq!(all.len(), 1);
    assert!(g(1, 3).divides(&(&all[0] - &z)));
    let z = crt(&[(g(0, 0), g(3, 0)), (g(0, 0), g(1, 1))]).unwrap();
    assert!(g(3, 3).divides(&z));
    assert!(crt(&[(g(0, 0), g(2, 0)), (g(1, 0), g(1, 1))]).is_err());
}

#[test]
fn residue_systems() {
    assert_eq!(residues_mod(&g(1, 1)).unwrap().len(), 2);
    assert_eq!(residues_mod(&g(2, 0)).unwrap().len(), 4);
    let r = residues_mod(&g(2, 1)).unwrap();
    assert_eq!(r.len(), 5);
    for (i, a) in r.iter().enumerate() {
        for b in &r[i + 1..] {
            assert!(!g(2, 1).divides(&(a - b)));
        }
    }
    assert!(residues_mod(&g(0, 0)).is_err());
}
