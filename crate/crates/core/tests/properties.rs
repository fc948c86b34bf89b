use proptest::prelude::*;

use ssc_core::ferrers::{closed_form_nu_min, construct_ferrers_code, lift_word, prop42_diagram, FerrersMethod};
use ssc_core::linear_set::{field_reduce_point, unreduce, QSystem};
use ssc_core::schubert::{cell_of, echelon_ferrers_of, PivotVector};
use ssc_core::subspace::subspace_distance;
use ssc_core::{rank_distance, FerrersDiagram, FieldCtx, Fq, Matrix, Subspace};

fn field() -> impl Strategy<Value = Fq> {
    prop_oneof![Just(2u64), Just(3), Just(5)].prop_map(|q| Fq::new(q).unwrap())
}

/// A field with a `rows x cols` matrix of raw entries.
fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (field(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(0..f.q(), r * c).prop_map(move |d| Matrix::from_vec(f, r, c, d).unwrap())
    })
}

proptest! {
    #[test]
    fn rref_is_canonical(m in matrix(5, 7), seed in any::<u64>()) {
        let s = Subspace::span(&m);
        // mix the rows by an invertible upper-triangular transform
        let f = m.field();
        let r = m.rows();
        let mut t = Matrix::identity(f, r);
        let mut x = seed;
        for i in 0..r {
            for j in i + 1..r {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                t.set(i, j, ((x >> 33) % f.q() as u64) as u32);
            }
        }
        let mixed = t.mul(&m).unwrap();
        prop_assert_eq!(Subspace::span(&mixed), s.clone());
        prop_assert_eq!(s.basis().rref().matrix, s.basis().clone());
    }

    #[test]
    fn dimension_formula(a in matrix(4, 6), b_seed in any::<u64>()) {
        let f = a.field();
        let n = a.cols();
        let mut x = b_seed;
        let data: Vec<u32> = (0..3 * n)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
                ((x >> 33) % f.q() as u64) as u32
            })
            .collect();
        let b = Matrix::from_vec(f, 3, n, data).unwrap();
        let (u, v) = (Subspace::span(&a), Subspace::span(&b));
        let sum = u.sum(&v).unwrap().dim();
        let cap = u.intersect(&v).unwrap();
        prop_assert_eq!(sum + cap.dim(), u.dim() + v.dim());
        prop_assert_eq!(cap.dim(), u.intersection_dim(&v).unwrap());
        prop_assert!(cap.is_subspace_of(&u).unwrap() && cap.is_subspace_of(&v).unwrap());
    }

    #[test]
    fn lifting_is_an_isometry(
        p in (4usize..=7).prop_flat_map(|n| (Just(n), prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 2..=3))),
        seeds in prop::collection::vec(any::<u64>(), 2),
    ) {
        let (n, pivots) = p;
        let p = PivotVector::new(n, pivots).unwrap();
        let f = Fq::new(3).unwrap();
        let d = echelon_ferrers_of(&p);
        let word = |seed: u64| {
            let mut m = Matrix::zeros(f, d.rows(), d.cols());
            let mut x = seed;
            for (i, j) in d.positions() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(7);
                m.set(i, j, ((x >> 33) % 3) as u32);
            }
            m
        };
        let (a, b) = (word(seeds[0]), word(seeds[1]));
        let (ua, ub) = (lift_word(&a, &p).unwrap(), lift_word(&b, &p).unwrap());
        prop_assert_eq!(cell_of(&ua).unwrap(), p.clone());
        prop_assert_eq!(subspace_distance(&ua, &ub).unwrap(), 2 * rank_distance(&a, &b).unwrap());
    }

    #[test]
    fn ferrers_codes_respect_the_bound(
        rows in prop::collection::vec(0usize..=4, 1..=3),
        delta in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let mut rows = rows;
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let d = FerrersDiagram::new(rows).unwrap();
        let f = Fq::new(2).unwrap();
        for method in [FerrersMethod::MrdRestrict, FerrersMethod::Greedy { seed }] {
            let c = construct_ferrers_code(&d, delta, f, method).unwrap();
            prop_assert!(c.supported_on_diagram());
            prop_assert!(c.min_distance().is_none_or(|x| x >= delta));
            prop_assert!(c.log_size() <= c.bound_exponent() as f64 + 1e-9);
        }
    }

    #[test]
    fn point_weights_sum_to_system_size(
        qk in prop_oneof![Just((2u64, 2usize)), Just((2, 3)), Just((3, 2))],
        r in 2usize..=3,
        u in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let (q, k) = qk;
        let c = FieldCtx::new(q, k).unwrap();
        let f = c.base();
        let n = r * k;
        prop_assume!(u <= n);
        let mut x = seed;
        let data: Vec<u32> = (0..u * n)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(3);
                ((x >> 33) % q) as u32
            })
            .collect();
        let span = Subspace::span(&Matrix::from_vec(f, u, n, data).unwrap());
        prop_assume!(span.dim() > 0);
        let basis: Vec<_> = span.to_rows().iter().map(|v| unreduce(&c, v).unwrap()).collect();
        let s = QSystem::new(c.clone(), r, basis).unwrap();
        let points = s.points().unwrap();
        let total: u64 = points.iter().map(|p| (q.pow(p.weight as u32) - 1) / (q - 1)).sum();
        prop_assert_eq!(total, (q.pow(span.dim() as u32) - 1) / (q - 1));
        for p in &points {
            let line = field_reduce_point(&c, &p.rep).unwrap();
            prop_assert_eq!(line.dim(), k);
        }
    }

    #[test]
    fn closed_form_for_larger_parameters(k in 2usize..=7, r in 2usize..=5, seed in any::<u64>()) {
        let u = 1 + (seed % ((r * k / 2) as u64)) as usize;
        let ell = 1 + ((seed >> 16) % (k.min(u) as u64)) as usize;
        let t = ((seed >> 32) % k as u64) as usize;
        let direct = prop42_diagram(k, r, u, ell).unwrap().nu_min(k - t).unwrap();
        prop_assert_eq!(closed_form_nu_min(k, r, u, ell, t).unwrap(), direct);
    }

    #[test]
    fn field_arithmetic(qk in prop_oneof![Just((2u64, 4usize)), Just((3, 3)), Just((5, 2)), Just((7, 2))], a in any::<u64>(), b in any::<u64>()) {
        let (q, k) = qk;
        let c = FieldCtx::new(q, k).unwrap();
        let order = c.order().unwrap();
        let (x, y) = (c.decode(a % order).unwrap(), c.decode(b % order).unwrap());
        // Frobenius is additive and multiplicative, and has order k
        prop_assert_eq!(c.frobenius(&c.add(&x, &y), 1), c.add(&c.frobenius(&x, 1), &c.frobenius(&y, 1)));
        prop_assert_eq!(c.frobenius(&c.mul(&x, &y), 1), c.mul(&c.frobenius(&x, 1), &c.frobenius(&y, 1)));
        prop_assert_eq!(c.frobenius(&x, k), x.clone());
        // the norm is multiplicative
        let f = c.base();
        prop_assert_eq!(c.norm(&c.mul(&x, &y)), f.mul(c.norm(&x), c.norm(&y)));
        if !x.is_zero() {
            prop_assert_eq!(c.mul(&x, &c.inv(&x).unwrap()), c.one());
        }
    }
}
