//! Worked examples checked against brute-force path enumeration and the full
//! permutation expansion.

use cn_lattice::oracle::{
    enumerate_law, enumerate_probability, enumerate_surviving, permutation_determinant,
};
use cn_lattice::prelude::*;
use num_traits::Zero;

fn biased() -> StepKernel {
    StepKernel::one_dimensional(ratio(2, 3), ratio(1, 3)).unwrap()
}

/// `(s, y)` is kept when `y + s e_d` has positive probability at time `t`.
fn support_by_enumeration(kernel: &StepKernel, t: u32, x: &Site) -> Vec<SupportPoint> {
    let law = enumerate_law(kernel, x, t).unwrap();
    let mut pts: Vec<SupportPoint> = law
        .iter()
        .filter(|(z, p)| z.in_upper() && !p.is_zero())
        .map(|(z, _)| SupportPoint::new(z.height() as u32, z.boundary_projection()))
        .collect();
    pts.sort();
    pts
}

#[test]
fn support_sets_match_enumeration() {
    let cases = [
        (StepKernel::uniform(1), 3, Site::new([0])),
        (StepKernel::uniform(1), 1, Site::new([0])),
        (StepKernel::uniform(2), 2, Site::new([0, 0])),
        (StepKernel::uniform(2), 5, Site::new([1, 0])),
        (StepKernel::uniform(3), 4, Site::new([0, 1, 0])),
    ];
    for (k, t, x) in cases {
        assert_eq!(support_set(t, &x).unwrap().points, support_by_enumeration(&k, t, &x));
    }
    let d2 = support_by_enumeration(&StepKernel::uniform(2), 2, &Site::new([0, 0]));
    assert!(d2.contains(&SupportPoint::new(1, Site::new([1, 0]))));
}

#[test]
fn evolve_matches_path_enumeration() {
    let k = biased();
    let m = evolve(&k, &Site::new([0]), 3).unwrap();
    let law = enumerate_law(&k, &Site::new([0]), 3).unwrap();
    assert_eq!(m.len(), law.len());
    for (z, p) in &law {
        assert_eq!(m.mass(z), *p);
    }
    assert_eq!(m.mass(&Site::new([3])), ratio(8, 27));
    assert_eq!(m.mass(&Site::new([-1])), ratio(2, 9));

    let k = StepKernel::uniform(1);
    let m = evolve(&k, &Site::new([0]), 2).unwrap();
    assert_eq!(m.mass(&Site::new([0])), ratio(1, 2));
    assert_eq!(
        m.mass(&Site::new([0])),
        enumerate_probability(&k, &Site::new([0]), 2, &Site::new([0])).unwrap()
    );
}

#[test]
fn killed_evolution_matches_enumeration() {
    let k = StepKernel::uniform(2)
        .with_override(Site::new([0, 1]), vec![ratio(1, 6), ratio(1, 6), ratio(1, 3), ratio(1, 3)])
        .unwrap();
    for (x0, t) in [(Site::new([0, 1]), 3), (Site::new([1, 2]), 4)] {
        let killed = evolve_killed(&k, &x0, t).unwrap();
        let surviving = enumerate_surviving(&k, &x0, t).unwrap();
        let surviving: Vec<_> = surviving.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        let got: Vec<_> = killed.surviving.iter().map(|(z, p)| (z.clone(), p.clone())).collect();
        assert_eq!(got, surviving);
        assert_eq!(killed.surviving.total() + killed.absorbed_total(), int(1));
        assert!(killed.absorbed.iter().all(|a| a.site.on_boundary() && a.time >= 1 && a.time <= t));
    }
}

#[test]
fn system_entries_match_enumeration() {
    let k = biased();
    for sign in [Sign::Plus, Sign::Minus] {
        let sys = build_system(&k, 3, &Site::new([0]), sign).unwrap();
        for (i, row) in sys.index.iter().enumerate() {
            for (j, col) in sys.index.iter().enumerate() {
                let target = match sign {
                    Sign::Plus => col.upper_site(),
                    Sign::Minus => col.lower_site(),
                };
                let p = enumerate_probability(&k, &row.y, row.s, &target).unwrap();
                assert_eq!(*sys.entry(i, j), p);
            }
        }
    }
}

#[test]
fn determinants_match_permutation_expansion() {
    let k = StepKernel::uniform(2)
        .with_override(Site::new([1, 0]), vec![ratio(1, 2), ratio(1, 6), ratio(1, 6), ratio(1, 6)])
        .unwrap();
    for t in 1..=3 {
        for sign in [Sign::Plus, Sign::Minus] {
            let sys = build_system(&k, t, &Site::new([0, 0]), sign).unwrap();
            assert_eq!(determinant(&sys), permutation_determinant(sys.rows()));
        }
    }
    let sys = build_system(&StepKernel::uniform(1), 3, &Site::new([0]), Sign::Plus).unwrap();
    assert_eq!(permutation_determinant(sys.rows()), ratio(1, 16));
}

#[test]
fn plane_parity_example_by_enumeration() {
    let k = StepKernel::uniform(2);
    let x0 = Site::new([0, 1]);
    let f = LatticeFunction::indicator(Site::new([0, 1])).unwrap();
    let report = barrier_parity(&k, &x0, 3, &f).unwrap();
    let surviving = enumerate_surviving(&k, &x0, 3).unwrap();
    let by_paths = surviving.get(&Site::new([0, 1])).cloned().unwrap_or_else(Rational::zero);
    assert!(report.pass);
    assert_eq!(report.lhs, by_paths);
}

#[test]
fn cramer_matches_solve_on_plane() {
    let k = StepKernel::uniform(2)
        .with_override(Site::new([0, 1]), vec![ratio(1, 6), ratio(1, 6), ratio(1, 3), ratio(1, 3)])
        .unwrap()
        .with_override(Site::new([-1, 0]), vec![ratio(1, 12), ratio(1, 4), ratio(1, 3), ratio(1, 3)])
        .unwrap();
    for t in 1..=3 {
        let x = Site::new([0, 0]);
        assert_eq!(
            cramer_coefficients(&k, t, &x, false).unwrap(),
            coefficients_via_solve(&k, t, &x).unwrap()
        );
    }
}
