use opcalc_core::diffop::{decompose, dn_mul, mul_in_rep, pincherle_d, pincherle_x, reconstruct};
use opcalc_core::families::sheffer;
use opcalc_core::matrix::matrix_poly_eval;
use opcalc_core::monomial::{monomiality_pair, verify_monomiality};
use opcalc_core::series::{row_egf, series_of_matrix};
use opcalc_core::{factorial, Basis, MatrixIndex, ParamPoly, Poly, PowerSeries, Rational, Ring, TruncMatrix};
use proptest::prelude::*;

type M = TruncMatrix<Rational>;
type S = PowerSeries<Rational>;

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    rat().prop_filter("nonzero", |q| !q.is_zero())
}

fn matrix(bound: i64, n: usize) -> impl Strategy<Value = M> {
    prop::collection::vec(rat(), n * (n + 2)).prop_map(move |v| M::from_fn(bound, n, |j, k| v[j * (n + 2) + k].clone()))
}

fn any_matrix(n: usize) -> impl Strategy<Value = M> {
    (-1i64..=1).prop_flat_map(move |b| matrix(b, n))
}

/// Index-zero matrix with nonzero diagonal; monic when `monic`.
fn group_matrix(n: usize, monic: bool) -> impl Strategy<Value = M> {
    (matrix(0, n), prop::collection::vec(nonzero_rat(), n)).prop_map(move |(a, d)| {
        M::from_fn(0, n, |j, k| {
            if j != k {
                a.get(j, k)
            } else if monic {
                Rational::from(1)
            } else {
                d[j].clone()
            }
        })
    })
}

fn series(order: usize) -> impl Strategy<Value = S> {
    prop::collection::vec(rat(), order).prop_map(S::new)
}

fn unit_series(order: usize) -> impl Strategy<Value = S> {
    series(order).prop_map(|s| {
        let mut c = s.coeffs().to_vec();
        c[0] = Rational::from(1);
        S::new(c)
    })
}

fn delta_series(order: usize) -> impl Strategy<Value = S> {
    series(order).prop_map(|s| {
        let mut c = s.coeffs().to_vec();
        c[0] = Rational::from(0);
        c[1] = Rational::from(1);
        S::new(c)
    })
}

const VARS: [&str; 4] = ["a", "b", "c", "d"];

fn param_poly() -> impl Strategy<Value = ParamPoly> {
    let term = (prop::collection::vec(0u32..=2, 4), rat()).prop_filter("degree at most 6", |(e, _)| e.iter().sum::<u32>() <= 6);
    prop::collection::vec(term, 0..5).prop_map(|terms| ParamPoly::new(&VARS, terms))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        if !a.is_zero() {
            prop_assert!(a.times(&a.inverse().unwrap()).is_one());
        }
        prop_assert!(a.minus(&a).is_zero());
    }

    #[test]
    fn rational_is_canonical(n in -50i64..50, d in 1i64..50, k in 1i64..7) {
        prop_assert_eq!(Rational::new(n * k, d * k), Rational::new(n, d));
        prop_assert!(Rational::new(n, -d).denom() > &0.into());
    }

    #[test]
    fn param_poly_ring_axioms(p in param_poly(), q in param_poly(), r in param_poly()) {
        prop_assert_eq!(p.plus(&q), q.plus(&p));
        prop_assert_eq!(p.times(&q), q.times(&p));
        prop_assert_eq!(p.plus(&q).plus(&r), p.plus(&q.plus(&r)));
        prop_assert_eq!(p.times(&q).times(&r), p.times(&q.times(&r)));
        prop_assert_eq!(p.times(&q.plus(&r)), p.times(&q).plus(&p.times(&r)));
        prop_assert!(p.minus(&p).is_zero());
        prop_assert_eq!(p.times(&ParamPoly::one()), p.clone());
    }

    #[test]
    fn substitution_is_a_homomorphism(p in param_poly(), q in param_poly(), vals in prop::collection::vec(rat(), 4)) {
        let asg: Vec<(&str, Rational)> = VARS.iter().copied().zip(vals).collect();
        let sp = p.substitute(&asg).unwrap();
        let sq = q.substitute(&asg).unwrap();
        prop_assert_eq!(p.times(&q).substitute(&asg).unwrap(), sp.times(&sq));
        prop_assert_eq!(p.plus(&q).substitute(&asg).unwrap(), sp.plus(&sq));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn matrix_product_is_associative(a in any_matrix(9), b in any_matrix(9), c in any_matrix(9)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn index_is_superadditive(a in matrix(-1, 8), b in matrix(1, 9)) {
        let b = b.truncate_rows(8).unwrap();
        let ab = a.mul(&b).unwrap();
        if let (MatrixIndex::Finite(ia), MatrixIndex::Finite(ib)) = (a.index_of(), b.index_of()) {
            prop_assert!(ab.index_of() >= MatrixIndex::Finite(ia + ib));
        }
    }

    #[test]
    fn shift_semantics(a in matrix(0, 9)) {
        let n = 9;
        let ax = a.mul(&M::basis(Basis::X, n)).unwrap();
        let axh = a.mul(&M::basis(Basis::Xhat, n)).unwrap();
        let ad = a.mul(&M::basis(Basis::D, n)).unwrap();
        let da = M::basis(Basis::D, n).mul(&a).unwrap();
        for k in 0..n {
            let u = a.row_poly(k).unwrap();
            prop_assert_eq!(ax.row_poly(k).unwrap(), &u * &Poly::t());
            let u0 = Poly::constant(u.coeff(0));
            prop_assert_eq!(axh.row_poly(k).unwrap(), (&u - &u0).div_t().unwrap());
            prop_assert_eq!(ad.row_poly(k).unwrap(), u.derivative());
            if k > 0 && k < da.valid_rows() {
                let prev = a.row_poly(k - 1).unwrap().scale(&Rational::from(k as i64));
                prop_assert_eq!(da.row_poly(k).unwrap(), prev);
            }
        }
    }

    #[test]
    fn conjugates_intertwine(a in group_matrix(9, false), u in matrix(-1, 9)) {
        let inv = a.invert().unwrap();
        let ur = TruncMatrix::product(&[&inv, &u, &a]).unwrap();
        prop_assert!(a.mul(&ur).unwrap().agrees_with(&u.mul(&a).unwrap()));
        let ul = TruncMatrix::product(&[&a, &u, &inv]).unwrap();
        prop_assert!(ul.mul(&a).unwrap().agrees_with(&a.mul(&u).unwrap()));
    }

    #[test]
    fn series_group_law(f in unit_series(12)) {
        let one = S::one(12);
        prop_assert_eq!(one.div(&f).unwrap().mul(&f), one);
    }

    #[test]
    fn reversion_inverts_composition(f in delta_series(10)) {
        let g = f.reversion().unwrap();
        let x = S::x(10);
        prop_assert_eq!(g.compose(&f).unwrap(), x.clone());
        prop_assert_eq!(f.compose(&g).unwrap(), x);
    }

    #[test]
    fn series_of_matrix_is_a_homomorphism(g in series(10), h in series(10)) {
        let d = M::basis(Basis::D, 10);
        let lhs = series_of_matrix(&g.mul(&h), &d).unwrap();
        let rhs = series_of_matrix(&g, &d).unwrap().mul(&series_of_matrix(&h, &d).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn exp_log_round_trip(f in unit_series(10)) {
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }
}

proptest! {
    #![proptest_config(config(20))]

    #[test]
    fn decompose_round_trip(a in matrix(0, 12)) {
        let rep = decompose(&a).unwrap();
        prop_assert_eq!(reconstruct(&rep, 12).unwrap(), a);
    }

    #[test]
    fn generating_function_identity(a in group_matrix(12, false)) {
        let rep = decompose(&a).unwrap();
        for t in [Rational::from(0), Rational::from(1), Rational::new(-2, 3)] {
            let e = S::x(12).scale(&t.negated()).exp().unwrap();
            let lhs = rep.egf_at(&t);
            let rhs = e.mul(&row_egf(&a, &t));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_in_representation(a in matrix(0, 12), b in matrix(0, 12)) {
        let direct = decompose(&a.mul(&b).unwrap()).unwrap();
        prop_assert_eq!(mul_in_rep(&a, &decompose(&b).unwrap()).unwrap(), direct);
    }

    #[test]
    fn dn_over_factorial(a in matrix(0, 12), n in 0usize..5) {
        let d = M::basis(Basis::D, 12);
        let dn = d.pow(n).unwrap().scale(&factorial(n).recip().unwrap());
        let lhs = decompose(&dn.mul(&a).unwrap().with_index_bound(0).unwrap()).unwrap();
        let rhs = dn_mul(&decompose(&a).unwrap(), n);
        prop_assert_eq!(lhs.ps(), &rhs.ps()[..lhs.len()]);
    }

    #[test]
    fn monic_commutators(a in group_matrix(12, true)) {
        let pair = monomiality_pair(&a).unwrap();
        prop_assert!(verify_monomiality(&pair));
        let comm = pair.l.mul(&pair.conj_d).unwrap().sub(&pair.conj_d.mul(&pair.l).unwrap());
        prop_assert!(comm.agrees_with(&M::identity(12)));
        prop_assert!(pair.q.mul(&pair.p).unwrap().agrees_with(&M::identity(12)));
        prop_assert!(pair.m.sub(&pair.shift).index_of() >= MatrixIndex::Finite(0));
        prop_assert!(pair.deriv.sub(&pair.p).index_of() >= MatrixIndex::Finite(0));
    }

    #[test]
    fn m_and_p_from_representation(a in group_matrix(12, true)) {
        let pair = monomiality_pair(&a).unwrap();
        let inv = a.invert().unwrap();
        let rep = decompose(&a).unwrap();
        let px = reconstruct(&pincherle_x(&rep), 12).unwrap();
        let pd = reconstruct(&pincherle_d(&rep), 12).unwrap();
        let m = M::basis(Basis::X, 12).add(&inv.mul(&px).unwrap());
        let p = M::basis(Basis::D, 12).sub(&inv.mul(&pd).unwrap());
        prop_assert!(pair.m.agrees_with(&m));
        prop_assert!(pair.p.agrees_with(&p));
    }

    #[test]
    fn sheffer_products_stay_sheffer(g1 in unit_series(11), f1 in delta_series(11), g2 in unit_series(11), f2 in delta_series(11)) {
        let n = 10;
        let s = sheffer(&g1, &f1, n).unwrap().s.mul(&sheffer(&g2, &f2, n).unwrap().s).unwrap();
        prop_assert!(s.index_of() == MatrixIndex::Finite(0));
        prop_assert!((0..n).all(|k| s.get(k, k).is_one()));
        let pair = monomiality_pair(&s).unwrap();
        // P = φ(D) has (m, 0) entry φₘ·m!.
        let phi = S::new((0..n).map(|m| pair.p.get(m, 0).times(&factorial(m).recip().unwrap())).collect());
        prop_assert!(phi.coeff(0).is_zero() && phi.coeff(1).is_one());
        prop_assert!(pair.p.agrees_with(&series_of_matrix(&phi, &M::basis(Basis::D, n)).unwrap()));
    }
}

#[test]
fn pincherle_pairs() {
    let n = 24;
    let x = M::basis(Basis::X, n);
    let d = M::basis(Basis::D, n);
    for j in 0..=10usize {
        let dj = d.pow(j).unwrap();
        let lhs = x.mul(&dj).unwrap().sub(&dj.mul(&x).unwrap());
        let expect = if j == 0 { M::zero(0, n) } else { d.pow(j - 1).unwrap().scale(&Rational::from(j as i64)) };
        assert!(lhs.agrees_with(&expect), "X·D^{j}");
        let xj = x.pow(j).unwrap();
        let lhs = xj.mul(&d).unwrap().sub(&d.mul(&xj).unwrap());
        let expect = if j == 0 { M::zero(0, n) } else { x.pow(j - 1).unwrap().scale(&Rational::from(j as i64)) };
        assert!(lhs.agrees_with(&expect), "X^{j}·D");
    }
}

#[test]
fn normal_ordering_expansion() {
    let n = 24;
    let x = M::basis(Basis::X, n);
    let d = M::basis(Basis::D, n);
    for k in 0..=8usize {
        for j in 0..=8usize {
            let lhs = x.pow(k).unwrap().mul(&d.pow(j).unwrap()).unwrap().scale(&factorial(j).recip().unwrap());
            let mut rhs = M::zero(0, n);
            for i in 0..=k.min(j) {
                let term = d
                    .pow(j - i)
                    .unwrap()
                    .mul(&x.pow(k - i).unwrap())
                    .unwrap()
                    .scale(&(opcalc_core::binomial(k, i) * factorial(j - i).recip().unwrap()));
                rhs = rhs.add(&term);
            }
            assert!(lhs.agrees_with(&rhs), "k = {k}, j = {j}");
        }
    }
}

#[test]
fn matrix_polynomial_matches_powers() {
    let x = M::basis(Basis::X, 10);
    let p = Poly::new(vec![Rational::from(2), Rational::from(-1), Rational::new(1, 3)]);
    let direct = M::identity(10)
        .scale(&Rational::from(2))
        .sub(&x)
        .add(&x.pow(2).unwrap().scale(&Rational::new(1, 3)));
    assert!(matrix_poly_eval(&p, &x).unwrap().agrees_with(&direct));
}
