use gvd_core::conifold::*;
use gvd_core::exactnum::{bernoulli, factorial, rat, rint, rpow, zeta_even, BigRat};
use num_traits::{One, Zero};

fn b_oracle(g: u32) -> BigRat {
    // x/sin x = sum (-1)^{n+1}(2^{2n}-2) B_{2n} x^{2n}/(2n)!, at x = s/2.
    let n = g as i64;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let sign = if n == 0 { 1 } else { sign };
    if n == 0 {
        return BigRat::one();
    }
    rint(sign) * (rpow(&rint(2), 2 * n) - rint(2)) * bernoulli(2 * g as usize)
        / (BigRat::from_integer(factorial(2 * g as u64)) * rpow(&rint(4), n))
}

#[test]
fn hodge_constants() {
    assert_eq!(hodge_bg(0), rint(1));
    assert_eq!(hodge_bg(1), rat(1, 24));
    assert_eq!(hodge_bg(2), rat(7, 5760));
    let h = HodgeConstants::new(10);
    for g in 0..=10 {
        assert_eq!(h.get(g).unwrap(), &b_oracle(g), "b_{g}");
    }
}

#[test]
fn degree_two_genus_zero() {
    assert_eq!(conifold_invariant(0, 2).unwrap(), rat(1, 8));
    for d in 1..8 {
        assert_eq!(conifold_invariant(0, d).unwrap(), rpow(&rint(d as i64), -3));
    }
    assert_eq!(conifold_invariant(1, 1).unwrap(), rat(1, 12));
    assert!(conifold_invariant(2, 0).is_err());
}

#[test]
fn closed_form_matches_hodge_convolution() {
    let h = HodgeConstants::new(8);
    for g in 0..=8 {
        for d in 1..=6 {
            assert_eq!(conifold_invariant(g, d).unwrap(), conifold_invariant_convolution(g, d, &h).unwrap(), "({g},{d})");
        }
    }
}

#[test]
fn invariants_are_positive() {
    // (-1)^{g-1} B_{2g} > 0, so every N_{g,d} is positive.
    for g in 0..=8 {
        for d in 1..=4 {
            let v = conifold_invariant(g, d).unwrap();
            assert!(v > BigRat::zero(), "({g},{d})");
        }
    }
}

#[test]
fn degree_zero_values() {
    assert_eq!(degree_zero(2, 2).unwrap(), rat(1, 2880));
    assert_eq!(degree_zero(0, 2).unwrap(), rint(0));
    assert_eq!(degree_zero(1, 2).unwrap(), rint(0));
    assert!(degree_zero(1, 3).is_err());
    // Cancels the h = 0 term B_{2g}/(g(2g-2)) (2 pi)^{2-2g} zeta(2g-2).
    for g in 2..=4u32 {
        let gi = g as i64;
        let h0 = bernoulli(2 * g as usize) / rint(gi * (2 * gi - 2)) * zeta_even(2 * gi - 2).unwrap();
        assert_eq!(degree_zero(g, 2).unwrap(), -h0, "g={g}");
    }
}

/// `(1/d)(2 sin(d y/2))^{-2}` expanded by solving `S * F = 1` term by term,
/// where `S = (2 sin(d y/2))^2 / (d y)^2`.
fn restricted_free_energy(d: u32, len: usize) -> Vec<BigRat> {
    let half = rat(d as i64, 2);
    let sin: Vec<BigRat> = (0..len)
        .map(|k| {
            let s = if k % 2 == 0 { rint(1) } else { rint(-1) };
            s * rpow(&half, 2 * k as i64) / BigRat::from_integer(factorial(2 * k as u64 + 1))
        })
        .collect();
    let mut sq = vec![BigRat::zero(); len];
    for i in 0..len {
        for j in 0..len - i {
            sq[i + j] += &sin[i] * &sin[j];
        }
    }
    let mut f: Vec<BigRat> = vec![];
    for k in 0..len {
        let mut acc = if k == 0 { rint(1) } else { rint(0) };
        for j in 1..=k {
            acc -= &sq[j] * &f[k - j];
        }
        f.push(acc);
    }
    let scale = rpow(&rint(d as i64), -3);
    f.into_iter().map(|c| c * &scale).collect()
}

#[test]
fn restricted_free_energy_identity() {
    // Orders y^{-2} .. y^{10}.
    for d in 1..=4u32 {
        let f = restricted_free_energy(d, 7);
        for g in 0..=6u32 {
            assert_eq!(conifold_invariant(g, d).unwrap(), f[g as usize], "g={g} d={d}");
        }
    }
}

#[test]
fn gopakumar_vafa_form() {
    let r = gv_check(4, 4).unwrap();
    assert!(r.matched(), "{r:?}");
    assert_eq!(r.checked, 20);
    let r = gv_check(8, 6).unwrap();
    assert!(r.matched());
    let g0 = gv_sine_term(0, 1, 3).unwrap();
    assert_eq!(g0[0], rint(1));
    assert_eq!(conifold_bps(0, 1), 1.into());
    assert_eq!(conifold_bps(0, 2), 0.into());
}

#[test]
fn table_is_ordered() {
    let t = conifold_table(2, 3);
    assert_eq!(t.len(), 9);
    assert_eq!((t[0].g, t[0].d), (0, 1));
    assert_eq!(t[1].value, rat(1, 8));
}
