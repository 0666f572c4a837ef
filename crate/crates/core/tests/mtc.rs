use gvd_core::exactnum::{rat, ApComplex, ApReal, Precision};
use gvd_core::liedata::{alcove_weights, Weight};
use gvd_core::mtc::*;
use gvd_core::tangle::{evaluate_closed, parse_diagram};
use gvd_core::Error;

const RIGHT_HOPF: &str = "cup@0 / cup@1 / x@0 / x@0 / cap@1 / cap@0";
const SET: [(usize, i64); 6] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)];

fn prec() -> Precision {
    Precision::new(200)
}

fn close(p: &Precision, a: &ApComplex, b: &ApComplex, tol: f64) -> bool {
    let d = a.dist(b).to_f64();
    let _ = p;
    d < tol
}

fn real(p: &Precision, x: f64) -> ApComplex {
    ApComplex::real(ApReal::from_rat(&gvd_core::BigRat::from_float(x).unwrap(), p.bits()))
}

#[test]
fn twist_eigenvalues() {
    let p = prec();
    for (n, k) in SET {
        let lp = k + n as i64;
        assert!(close(&p, &twist_eigenvalue(&Weight::zero(n), n, k, &p).unwrap(), &p.one(), 1e-50));
        // eps^{N - 1/N} for the fundamental weight.
        let expect = p.cis_turn(&(rat(n as i64 * n as i64 - 1, n as i64) / gvd_core::BigRat::from_integer((2 * lp).into())));
        assert!(close(&p, &twist_eigenvalue(&Weight::fundamental(n, 1), n, k, &p).unwrap(), &expect, 1e-50));
    }
    let sl2 = p.cis_turn(&rat(3, 2 * 2 * 5));
    assert!(close(&p, &twist_eigenvalue(&Weight::fundamental(2, 1), 2, 3, &p).unwrap(), &sl2, 1e-50));
    assert!(matches!(twist_eigenvalue(&Weight::new(vec![4]).unwrap(), 2, 3, &p), Err(Error::Domain(_))));
}

#[test]
fn stilde_row_zero_is_quantum_dimension() {
    let p = prec();
    for (n, k) in SET {
        let md = ModularData::new(n, k, &p).unwrap();
        assert!(close(&p, &md.stilde[0][0], &p.one(), 1e-50));
        for j in 0..md.len() {
            assert!(close(&p, &md.stilde[0][j], &md.d[j], 1e-50), "({n},{k}) {j}");
            assert!(md.d[j].re.to_f64() >= 0.0 && md.d[j].im.is_zero());
            assert!(close(&p, &ApComplex::real(md.theta[j].abs()), &p.one(), 1e-50));
            for i in 0..md.len() {
                assert!(close(&p, &md.stilde[i][j], &md.stilde[j][i], 1e-50));
            }
        }
    }
}

#[test]
fn sl2_level_one_by_hand() {
    // Two objects with d = 1, 1; s~ = [[1, 1], [1, -1]] at eps = e^{pi i/3}.
    let p = prec();
    let md = ModularData::new(2, 1, &p).unwrap();
    assert!(close(&p, &md.stilde[1][1], &real(&p, -1.0), 1e-50));
    assert!(close(&p, &md.diameter, &ApComplex::real(p.int(2).sqrt()), 1e-50));
    assert!(close(&p, &md.p_plus, &(p.one() + p.cis_turn(&rat(1, 4))), 1e-50));
}

#[test]
fn z_s3_matches_diameter() {
    let p = prec();
    assert!(close(&p, &z_s3(2, 1, &p).unwrap(), &ApComplex::real(p.int(2).sqrt().recip()), 1e-50));
    assert!(close(&p, &z_s3(2, 2, &p).unwrap(), &p.crat(&rat(1, 2)), 1e-50));
    for n in 2..=4 {
        for k in 1..=4 {
            let md = ModularData::new(n, k, &p).unwrap();
            let z = z_s3(n, k, &p).unwrap();
            assert!(close(&p, &(&z * &md.diameter), &p.one(), 1e-50), "({n},{k})");
        }
    }
}

#[test]
fn sl2z_relations() {
    let p = prec();
    for (n, k) in SET {
        let r = verify_sl2z(n, k, &p).unwrap();
        let small = |x: &ApReal| x.to_f64() < 1e-45;
        assert!(small(&r.s_squared_t_vs_t_s_squared), "({n},{k}) {r:?}");
        assert!(small(&r.s_fourth_vs_identity), "({n},{k}) {r:?}");
        assert!(small(&r.stilde_squared_vs_dual), "({n},{k}) {r:?}");
        assert!(small(&r.inverse_st_cubed_vs_s_squared), "({n},{k}) {r:?}");
        // s~ is real in rank one, so both pairings agree; from rank two on
        // (st)^3 is scalar while s^2 is the nontrivial charge conjugation.
        assert_eq!(small(&r.st_cubed_vs_s_squared), n == 2, "({n},{k}) {r:?}");
    }
}

#[test]
fn zeta_is_a_sixth_root() {
    let p = prec();
    for (n, k) in SET {
        let md = ModularData::new(n, k, &p).unwrap();
        let z = md.zeta(&p);
        assert!(close(&p, &z.powi(6), &md.p_plus.div(&md.p_minus), 1e-45));
    }
}

#[test]
fn dual_permutation_in_rank_two() {
    let p = prec();
    let md = ModularData::new(3, 2, &p).unwrap();
    let a = alcove_weights(3, 2).unwrap();
    let w1 = a.index_of(&Weight::fundamental(3, 1)).unwrap();
    let w2 = a.index_of(&Weight::fundamental(3, 2)).unwrap();
    let pi = md.dual_matrix(&p);
    assert!(close(&p, &pi[w1][w2], &p.one(), 1e-60));
    assert!(close(&p, &pi[w1][w1], &p.czero(), 1e-60));
}

#[test]
fn gauss_sums_multiply_to_d_squared() {
    let p = prec();
    for (n, k) in SET {
        let md = ModularData::new(n, k, &p).unwrap();
        let d2 = ApComplex::real(md.sum_d_squared());
        assert!(close(&p, &(&md.p_plus * &md.p_minus), &d2, 1e-45), "({n},{k})");
    }
}

#[test]
fn unknot_surgery_is_kirby_invariant() {
    let p = prec();
    for (n, k) in SET {
        let z = z_s3(n, k, &p).unwrap();
        for f in [-1, 1] {
            assert!(close(&p, &sln_unknot_surgery_tau(f, n, k, &p).unwrap(), &z, 1e-45), "({n},{k}) f={f}");
        }
        assert!(close(&p, &sln_unknot_surgery_tau(0, n, k, &p).unwrap(), &p.one(), 1e-45));
    }
}

#[test]
fn right_hopf_matches_stilde() {
    let p = prec();
    let hopf = parse_diagram(RIGHT_HOPF).unwrap();
    for (n, k) in [(2usize, 1i64), (2, 3), (3, 2), (4, 1)] {
        let w = evaluate_closed(&hopf, n as u32).unwrap();
        let got = hopf_at_eps(&w, n, k, &p);
        let f = Weight::fundamental(n, 1);
        let s = stilde_entry(&f, &f, n, k, &p).unwrap();
        assert!(close(&p, &got, &s, 1e-45), "({n},{k})");
    }
}

#[test]
fn signatures() {
    assert_eq!(signature(&[vec![0, -1], vec![-1, 0]]).unwrap(), 0);
    assert_eq!(signature(&[vec![-1]]).unwrap(), -1);
    assert_eq!(signature(&[vec![2, 1], vec![1, 0]]).unwrap(), 0);
    assert_eq!(signature(&[]).unwrap(), 0);
    assert_eq!(signature(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
    assert_eq!(signature(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]).unwrap(), 3);
    assert_eq!(signature(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap(), -1);
    assert!(matches!(signature(&[vec![0, 1], vec![2, 0]]), Err(Error::Argument(_))));
}

#[test]
fn u1_values() {
    let p = prec();
    for m in 1..=3u32 {
        let o = 2 * m as i64 + 1;
        let hopf = SurgeryPresentation::new(vec![vec![0, -1], vec![-1, 0]]).unwrap();
        for (a, b) in [(1, 2), (2, 3), (0, 1)] {
            let v = u1_link_value(&hopf.clone().with_colors(vec![a, b]).unwrap(), m, &p).unwrap();
            assert!(close(&p, &v, &p.cis_turn(&rat(-2 * a * b, o)), 1e-50));
        }
        let u = SurgeryPresentation::unknot(-1).with_colors(vec![2]).unwrap();
        assert!(close(&p, &u1_link_value(&u, m, &p).unwrap(), &p.cis_turn(&rat(-4, o)), 1e-50));
        let z = SurgeryPresentation::new(vec![vec![3, 1], vec![1, -2]]).unwrap().with_colors(vec![0, 0]).unwrap();
        assert!(close(&p, &u1_link_value(&z, m, &p).unwrap(), &p.one(), 1e-50));
    }
}

#[test]
fn u1_tau_of_the_three_sphere() {
    let p = prec();
    for m in 1..=5u32 {
        let inv = ApComplex::real(p.int(2 * m as i64 + 1).sqrt().recip());
        for pres in [
            SurgeryPresentation::empty(),
            SurgeryPresentation::unknot(-1),
            SurgeryPresentation::new(vec![vec![0, -1], vec![-1, 0]]).unwrap(),
        ] {
            assert!(close(&p, &u1_tau(&pres, m, &p).unwrap(), &inv, 1e-45), "m={m} {pres:?}");
        }
        let s2s1 = u1_tau(&SurgeryPresentation::unknot(0), m, &p).unwrap();
        assert!(close(&p, &s2s1, &p.one(), 1e-45));
    }
}

#[test]
fn bad_inputs() {
    let p = prec();
    assert!(SurgeryPresentation::new(vec![vec![0, 1], vec![0, 0]]).is_err());
    assert!(SurgeryPresentation::unknot(1).with_colors(vec![1, 2]).is_err());
    assert!(u1_link_value(&SurgeryPresentation::unknot(1), 1, &p).is_err());
    assert!(ModularData::new(1, 1, &p).is_err());
    assert!(U1Category::new(0).is_err());
}
