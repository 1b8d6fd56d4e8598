//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_apolarity::apolarity::{contract, DegreeBox};
use toric_apolarity::bounds::{best_bounds, bound_report, catalecticant};
use toric_apolarity::fan::FanModel;
use toric_apolarity::ideals::{cactus_certificate, colon_piece, ideal_piece, IdealGens};
use toric_apolarity::ring::{find_certificate, monomial_basis, GradedRing, Monomial, PositivityCertificate};
use toric_apolarity::secant::{
    family, limit_certificate, terracini_determinant_check, terracini_probe, verify_decomposition, FieldScalar,
    InvalidReason, ParamPoint,
};
use toric_apolarity::syntax::parse_terms;
use toric_apolarity::{fixtures, MultiPoly, Rational, Side};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn degree_table(fan: &FanModel) -> String {
    let degs: Vec<String> = fan.var_degrees().iter().map(|d| d.to_string()).collect();
    format!("{} [{}]", fan.class_group(), degs.join(" "))
}

fn class_groups() -> Outcome {
    let cases = [
        (fixtures::hirzebruch(), "Z^2 [(1,0) (1,0) (1,1) (0,1)]"),
        (fixtures::weighted_plane(), "Z [1 1 4]"),
        (fixtures::fake_plane(), "Z x Z/3 [(1,0) (1,1) (1,2)]"),
    ];
    let mut seen = Vec::new();
    for (fan, want) in cases {
        let got = degree_table(&fan);
        ensure!(got == want, "got {got}, expected {want}");
        seen.push(got);
    }
    Ok(seen.join("; "))
}

fn hilbert_grids() -> Outcome {
    let r = f1();
    let cases: [(&str, &str, Vec<Vec<usize>>); 2] = [
        ("x0*x1*y0*y1", "0..3,0..2", vec![vec![1, 2, 1, 0], vec![1, 3, 3, 1], vec![0, 1, 2, 1]]),
        (
            "x0^2*x1^2*y0*y1",
            "0..5,0..2",
            vec![vec![1, 2, 3, 2, 1, 0], vec![1, 3, 5, 5, 3, 1], vec![0, 1, 2, 3, 2, 1]],
        ),
    ];
    for (f, b, want) in cases {
        let f = form(&r, f);
        let bx = DegreeBox::parse(r.fan().class_group(), b).unwrap();
        let rows = f.hilbert_grid(&bx).rows_2d(&bx);
        ensure!(rows == want, "grid {rows:?}, expected {want:?}");
        ensure!(f.check_symmetry(&bx).symmetric, "asymmetric grid");
    }
    let p = p114();
    let f = form(&p, "x^2*y^2");
    let bx = DegreeBox::parse(p.fan().class_group(), "0..4").unwrap();
    let vals: Vec<usize> = f.hilbert_grid(&bx).values.values().copied().collect();
    ensure!(vals == [1, 2, 3, 2, 1], "weighted plane values {vals:?}");
    ensure!(f.check_symmetry(&bx).symmetric, "weighted plane asymmetric");
    let fp = fake();
    let f = form(&fp, "x0^2*x1^2*x2^2");
    let v = f.hilbert_value(&deg(&fp, "3;1"));
    ensure!(v == 3, "fake plane value {v}");
    let bx = DegreeBox::parse(fp.fan().class_group(), "0..6").unwrap();
    ensure!(f.check_symmetry(&bx).symmetric, "fake plane asymmetric");
    Ok("four grids match and are symmetric".into())
}

fn bounds() -> Outcome {
    let r = f1();
    let f = form(&r, "x0*x1*y0*y1");
    let rep = bound_report(&f, &deg(&r, "2,1"));
    ensure!(rep.border == 3 && rep.cactus == Some(3), "example 1: {rep:?}");
    let f2 = form(&r, "x0^2*x1^2*y0*y1");
    let best = best_bounds(&f2, &DegreeBox::parse(r.fan().class_group(), "0..5,0..2").unwrap());
    let b = best.border.unwrap();
    ensure!(b.value == 5 && ["(2,1)", "(3,1)"].contains(&b.beta.to_string().as_str()), "example 2: {b:?}");
    let p = p114();
    let fp = form(&p, "x^2*y^2");
    let rep = bound_report(&fp, &deg(&p, "2"));
    ensure!(rep.border == 3 && rep.rank_bound == 3 && rep.cactus.is_none(), "weighted plane: {rep:?}");
    let z = fake();
    let fz = form(&z, "x0^2*x1^2*x2^2");
    let rep = bound_report(&fz, &deg(&z, "3;1"));
    ensure!(rep.border == 3, "fake plane: {rep:?}");
    Ok(format!("border>=3 cactus>=3; border>=5 at {}; cactus suppressed at 2; border>=3 at (3,1)", b.beta))
}

fn certificates() -> Outcome {
    struct Case {
        ring: Arc<GradedRing>,
        form: &'static str,
        ideal: &'static [&'static str],
        ample: &'static str,
        reduced: bool,
        length: usize,
    }
    let (a, b, c) = (f1(), p114(), fake());
    let cases = [
        Case { ring: a.clone(), form: "x0*x1*y0*y1", ideal: &["a0^2 - a1^2", "b0^2 - a1^2*b1^2"], ample: "1,1", reduced: true, length: 4 },
        Case { ring: a, form: "x0^2*x1^2*y0*y1", ideal: &["a0^3 - a1^3", "b0^2 - b1^2*a1^2"], ample: "1,1", reduced: true, length: 6 },
        Case { ring: b.clone(), form: "x^2*y^2", ideal: &["a^3", "b^3"], ample: "4", reduced: false, length: 2 },
        Case { ring: b, form: "x^2*y^2", ideal: &["a^3 - b^3", "c"], ample: "4", reduced: true, length: 3 },
        Case { ring: c.clone(), form: "x0^4*x1*x2", ideal: &["a1^2", "a2^2"], ample: "3;0", reduced: false, length: 2 },
        Case { ring: c.clone(), form: "x0^4*x1*x2", ideal: &["a0^5 - a1^4*a2", "a1^3 - a2^3"], ample: "3;0", reduced: true, length: 5 },
        Case { ring: c, form: "x0^2*x1^2*x2^2", ideal: &["a0^3 - a1^3", "a1^3 - a2^3"], ample: "3;0", reduced: true, length: 3 },
    ];
    let mut claims = Vec::new();
    for case in &cases {
        let f = form(&case.ring, case.form);
        let i = IdealGens::parse(&case.ring, case.ideal).unwrap();
        let cert = cactus_certificate(&f, &i, &deg(&case.ring, case.ample), 3, 12, case.reduced)
            .map_err(|e| format!("{}: {e}", case.form))?;
        ensure!(cert.length.stabilized && cert.length.value == case.length, "{}: {:?}", case.form, cert.length);
        ensure!(cert.cactus_bound == Some(case.length), "{}: cactus bound {:?}", case.form, cert.cactus_bound);
        ensure!(cert.rank_bound == case.reduced.then_some(case.length), "{}: rank bound", case.form);
        claims.push(if case.reduced { format!("r<={}", case.length) } else { format!("cr<={}", case.length) });
    }
    Ok(claims.join(" "))
}

fn decomposition() -> Outcome {
    let r = f1();
    let f = form(&r, "x0*x1*y0*y1");
    let pts = [([1, 1, 1, 1], 1), ([1, 1, 1, -1], -1), ([1, -1, 1, 1], -1), ([1, -1, 1, -1], 1)];
    let terms: Vec<(Rational, ParamPoint)> = pts.iter().map(|(p, s)| (qq(*s, 4), ParamPoint::from_ints(p))).collect();
    let check = verify_decomposition(&f, &terms).unwrap();
    ensure!(check.holds, "residual {}", check.residual.to_text(r.fan()));
    Ok("four-point combination is exact".into())
}

fn three_point_family(flip_first: bool) -> toric_apolarity::secant::LaurentFamily {
    let first = if flip_first { "-l^-1*m^-1" } else { "l^-1*m^-1" };
    family(
        &["l", "m"],
        &[(first, &["l", "1", "1", "m"]), ("-l^-1*m^-1", &["0", "1", "1", "m"]), ("-m^-1", &["1", "0", "1", "0"])],
    )
    .unwrap()
}

fn limit() -> Outcome {
    let r = f1();
    let f = form(&r, "x0*x1*y0*y1");
    let cert = limit_certificate(&f, &three_point_family(false)).unwrap();
    ensure!(cert.valid, "verdict {:?}", cert.reason);
    let names: Vec<String> = ["l", "m", "x0", "x1", "y0", "y1"].iter().map(|s| s.to_string()).collect();
    let want =
        parse_terms("l^2*m*x0^3*y1^2 + l*m*x0^2*x1*y1^2 + m*x0*x1^2*y1^2 + l*x0^2*y0*y1", &names, false).unwrap();
    ensure!(cert.residue == want, "residue {}", cert.residue_text);
    Ok(format!("VALID, br<={}, residue {}", cert.points, cert.residue_text))
}

fn terracini() -> Outcome {
    let r = f1();
    let a = terracini_probe(&r, &deg(&r, "3,2"), 3, 101, 0, 5, None).unwrap();
    ensure!(a.rank == 9 && a.fills_space, "(3,2): {a:?}");
    let b = terracini_probe(&r, &deg(&r, "5,2"), 5, 101, 0, 5, None).unwrap();
    ensure!(b.rank == 15 && b.fills_space, "(5,2): {b:?}");
    let at: Vec<Rational> = [1, 2, 3, 4, 5, 6, 7, 9, 0, 2].iter().map(|&v| q(v)).collect();
    let det = terracini_determinant_check(&r, &deg(&r, "5,2"), 5, &at, Some(101), None).unwrap();
    ensure!(det == FieldScalar::Modular { value: 34, prime: 101 }, "det {det:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let v: Vec<Rational> = (0..6).map(|_| qq(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        let (x, y, s, t, u, w) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
        let inner = y * s - x * t - y * u + t * u + x * w - s * w;
        let want = (s - u) * (u - x) * (s - x) * num_traits::pow(inner, 4);
        let got = terracini_determinant_check(&r, &deg(&r, "3,2"), 3, &v, None, None).unwrap();
        let want_text = toric_apolarity::syntax::format_rational(&want);
        ensure!(got == FieldScalar::Rational(want_text.clone()), "det {got} != {want_text}");
    }
    Ok("rank 9, rank 15, det 34 mod 101, factored determinant at 20 points".into())
}

fn properties() -> Outcome {
    // Duality: S_α and T_α pair to the identity.
    let rings = [f1(), p114(), fake()];
    let boxes = ["0..4,0..3", "0..9", "0..4"];
    let mut pieces = 0;
    for (r, b) in rings.iter().zip(boxes) {
        for alpha in DegreeBox::parse(r.fan().class_group(), b).unwrap().iter() {
            let basis = r.basis(&alpha);
            for (i, m) in basis.monomials().iter().enumerate() {
                let g = MultiPoly::monomial(r.fan(), Side::Primal, m.0.clone()).unwrap();
                for (j, n) in basis.monomials().iter().enumerate() {
                    let y = MultiPoly::monomial(r.fan(), Side::Dual, n.0.clone()).unwrap();
                    let v = contract(r.fan(), &g, &y).unwrap();
                    let expect_one = i == j;
                    ensure!(v.is_zero() != expect_one && (!expect_one || v.coefficient(&Monomial::one(m.0.len())) == q(1)), "pairing at {alpha}");
                }
            }
            pieces += 1;
        }
    }

    // Module law against an independent contraction.
    let r = f1();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rand_poly = |side: Side, max: u32| -> MultiPoly {
        let terms: Vec<(Monomial, Rational)> = (0..rng.gen_range(1..4))
            .map(|_| (Monomial((0..4).map(|_| rng.gen_range(0..=max)).collect()), q(rng.gen_range(-3..=3))))
            .collect();
        MultiPoly::from_terms(r.fan(), side, terms).unwrap()
    };
    for _ in 0..100 {
        let (g, h, f) = (rand_poly(Side::Primal, 1), rand_poly(Side::Primal, 1), rand_poly(Side::Dual, 3));
        let lhs = contract(r.fan(), &g.multiply(&h).unwrap(), &f).unwrap();
        let rhs = contract(r.fan(), &g, &contract(r.fan(), &h, &f).unwrap()).unwrap();
        ensure!(lhs == rhs, "module law");
        ensure!(as_map(&lhs) == oracle_contract(&g.multiply(&h).unwrap(), &f), "oracle contraction");
    }

    // Catalecticant ranks pair up and agree with a plain elimination.
    for (ring, text, bx) in [(f1(), "x0^2*x1^2*y0*y1 + x0*x1^2*y0^2", "0..5,0..2"), (fake(), "x0^2*x1^2*x2^2 + x0^3*x1^3", "0..6")] {
        let f = form(&ring, text);
        for beta in DegreeBox::parse(ring.fan().class_group(), bx).unwrap().iter() {
            let c = catalecticant(&f, &beta, None);
            let d = catalecticant(&f, &f.degree().try_sub(&beta).unwrap(), None);
            ensure!(c.rank == d.rank, "rank symmetry at {beta}");
            ensure!(c.rank == oracle_rank(&c.entries), "rank oracle at {beta}");
        }
    }

    // Basis enumeration under two certificates, against direct enumeration.
    let fan = fixtures::hirzebruch();
    let c1 = find_certificate(&fan, 16).unwrap();
    let c2 = PositivityCertificate { weight: vec![3, 7] };
    for d1 in -1..7 {
        for d2 in -1..4 {
            let alpha = fan.class_group().element(vec![d1, d2], vec![]).unwrap();
            let b1 = monomial_basis(&fan, &c1, &alpha);
            ensure!(b1 == monomial_basis(&fan, &c2, &alpha), "certificate dependence at {alpha}");
            ensure!(b1.len() == oracle_f1_basis(d1, d2).len(), "basis size at {alpha}");
        }
    }

    // Colon pieces contain ideal pieces.
    for (ring, gens, bx) in [
        (f1(), vec!["a0^2*b1", "a1^2*b1"], "0..3,0..2"),
        (fake(), vec!["a1^2", "a2^2"], "0..4"),
        (p114(), vec!["a^3 - b^3", "c"], "0..8"),
    ] {
        let i = IdealGens::parse(&ring, &gens).unwrap();
        let bset = ring.fan().irrelevant_ideal();
        for delta in DegreeBox::parse(ring.fan().class_group(), bx).unwrap().iter() {
            let ip = ideal_piece(&ring, &i, &delta).unwrap();
            let cp = colon_piece(&ring, &i, &bset, &delta).unwrap();
            let mut stacked = cp.clone();
            stacked.extend(ip.iter().cloned());
            ensure!(oracle_rank(&stacked) == cp.len(), "I not inside (I:B) at {delta}");
        }
    }
    Ok(format!("duality on {pieces} pieces, 100 module-law instances, rank symmetry, certificates, colon containment"))
}

fn negatives() -> Outcome {
    let r = f1();
    let f = form(&r, "x0*x1*y0*y1");
    let pts = [([1, 1, 1, 1], 1), ([1, 1, 1, -1], -1), ([1, -1, 1, 1], -1), ([1, -1, 1, -1], 2)];
    let terms: Vec<(Rational, ParamPoint)> = pts.iter().map(|(p, s)| (qq(*s, 4), ParamPoint::from_ints(p))).collect();
    ensure!(!verify_decomposition(&f, &terms).unwrap().holds, "perturbed decomposition accepted");
    let cert = limit_certificate(&f, &three_point_family(true)).unwrap();
    ensure!(!cert.valid && cert.reason == Some(InvalidReason::DegreeZeroPartNonzero), "flipped family: {:?}", cert.reason);
    let rays = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1], vec![0, 0, -1]];
    let bad = FanModel::build(rays, vec![vec![0, 1, 2, 3]]);
    ensure!(bad.as_ref().is_err_and(|e| e.name() == "NonSimplicialCone"), "non-simplicial cone accepted");
    let p = p114();
    let rep = bound_report(&form(&p, "x^2*y^2"), &deg(&p, "3"));
    ensure!(!rep.cartier && rep.cactus.is_none(), "non-Cartier cactus bound reported");
    Ok("perturbed decomposition false; flipped family INVALID; non-simplicial rejected; cactus absent".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("class groups and degree tables", class_groups),
        ("Hilbert grids and symmetry", hilbert_grids),
        ("catalecticant bounds with Cartier gate", bounds),
        ("containment and length certificates", certificates),
        ("four-point decomposition", decomposition),
        ("limit certificate", limit),
        ("Terracini ranks and determinants", terracini),
        ("property suites", properties),
        ("negative controls", negatives),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
