mod common;

use becsc::gf::{Field, Gf, MAX_DEGREE, REDUCTION_POLYNOMIALS};
use common::clmul;
use proptest::prelude::*;

fn elem(l: u8) -> impl Strategy<Value = u32> {
    0u32..(1u32 << l)
}

fn degree_and_triple() -> impl Strategy<Value = (u8, u32, u32, u32)> {
    (1u8..=MAX_DEGREE).prop_flat_map(|l| (Just(l), elem(l), elem(l), elem(l)))
}

#[test]
fn small_fields_match_shift_and_reduce() {
    for l in 1..=6u8 {
        let f = Field::get(l).unwrap();
        let poly = REDUCTION_POLYNOMIALS[l as usize];
        for a in 0..1u32 << l {
            for b in 0..1u32 << l {
                assert_eq!(f.mul(Gf(a as u16), Gf(b as u16)).0 as u32, clmul(a, b, poly, l));
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    // The reduction polynomials are primitive: x generates every nonzero element.
    for l in 1..=MAX_DEGREE {
        let f = Field::get(l).unwrap();
        let order = f.size() as u64 - 1;
        let x = Gf(if l == 1 { 1 } else { 2 });
        assert_eq!(f.pow(x, order), Gf::ONE, "L={l}");
        let mut rest = order;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                assert_ne!(f.pow(x, order / p), Gf::ONE, "x has order dividing {} at L={l}", order / p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
    }
}

#[test]
fn gf2_inner_product_is_parity() {
    let f = Field::gf2();
    for a in 0u32..64 {
        for b in 0u32..64 {
            let va: Vec<Gf> = (0..6).map(|i| Gf((a >> i & 1) as u16)).collect();
            let vb: Vec<Gf> = (0..6).map(|i| Gf((b >> i & 1) as u16)).collect();
            let want = (a & b).count_ones() % 2;
            assert_eq!(f.inner_product(&va, &vb).unwrap(), Gf(want as u16));
        }
    }
}

#[test]
fn rejects_bad_degrees_and_elements() {
    assert!(Field::get(0).is_err());
    assert!(Field::get(17).is_err());
    assert!(Field::get(4).unwrap().element(16).is_err());
    assert!(Field::gf2().inner_product(&[Gf::ONE], &[]).is_err());
}

proptest! {
    #[test]
    fn mul_matches_oracle((l, a, b, _c) in degree_and_triple()) {
        let f = Field::get(l).unwrap();
        let got = f.mul(Gf(a as u16), Gf(b as u16)).0 as u32;
        prop_assert_eq!(got, clmul(a, b, REDUCTION_POLYNOMIALS[l as usize], l));
    }

    #[test]
    fn ring_axioms((l, a, b, c) in degree_and_triple()) {
        let f = Field::get(l).unwrap();
        let (a, b, c) = (Gf(a as u16), Gf(b as u16), Gf(c as u16));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, a), Gf::ZERO);
    }

    #[test]
    fn inverse_and_division((l, a, b, _c) in degree_and_triple()) {
        let f = Field::get(l).unwrap();
        let (a, b) = (Gf(a as u16), Gf(b as u16));
        prop_assume!(!b.is_zero());
        let q = f.div(a, b).unwrap();
        prop_assert_eq!(f.mul(q, b), a);
        prop_assert_eq!(f.mul(b, f.inv(b).unwrap()), Gf::ONE);
        prop_assert!(f.inv(Gf::ZERO).is_none());
    }

    #[test]
    fn pow_is_repeated_mul((l, a, _b, _c) in degree_and_triple(), e in 0u64..40) {
        let f = Field::get(l).unwrap();
        let a = Gf(a as u16);
        let mut want = Gf::ONE;
        for _ in 0..e {
            want = f.mul(want, a);
        }
        prop_assert_eq!(f.pow(a, e), want);
    }

    #[test]
    fn inner_product_is_bilinear(
        l in 1u8..=8,
        raw in proptest::collection::vec((0u32..256, 0u32..256, 0u32..256), 1..12),
        s in 0u32..256,
    ) {
        let f = Field::get(l).unwrap();
        let m = (1u32 << l) - 1;
        let x: Vec<Gf> = raw.iter().map(|t| Gf((t.0 & m) as u16)).collect();
        let y: Vec<Gf> = raw.iter().map(|t| Gf((t.1 & m) as u16)).collect();
        let p: Vec<Gf> = raw.iter().map(|t| Gf((t.2 & m) as u16)).collect();
        let s = Gf((s & m) as u16);
        let sum: Vec<Gf> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
        let mut scaled = x.clone();
        f.scale(&mut scaled, s);
        prop_assert_eq!(
            f.inner_product(&sum, &p).unwrap(),
            f.add(f.inner_product(&x, &p).unwrap(), f.inner_product(&y, &p).unwrap())
        );
        prop_assert_eq!(f.inner_product(&scaled, &p).unwrap(), f.mul(s, f.inner_product(&x, &p).unwrap()));
        let mut axpy = y.clone();
        f.axpy(&mut axpy, s, &x);
        let want: Vec<Gf> = x.iter().zip(&y).map(|(&a, &b)| f.add(b, f.mul(s, a))).collect();
        prop_assert_eq!(axpy, want);
    }
}
