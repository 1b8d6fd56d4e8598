mod common;

use common::*;
use toric_apolarity::ideals::{
    cactus_certificate, colon_piece, ideal_piece, length_estimate, saturation_gap, IdealError, IdealGens,
};
use toric_apolarity::{Error, GradedRing};

fn gens(r: &GradedRing, g: &[&str]) -> IdealGens {
    IdealGens::parse(r, g).unwrap()
}

#[test]
fn apolar_ideal_pieces() {
    let r = f1();
    let f = form(&r, "x0*x1*y0*y1");
    let ann = f.annihilator_in_degree(&deg(&r, "2,1"));
    assert_eq!(ann.len(), 2);

    let f2 = form(&r, "x0^2*x1^2*y0*y1");
    let d = deg(&r, "3,1");
    let ann = f2.annihilator_in_degree(&d);
    let piece = ideal_piece(&r, &gens(&r, &["a0^3*b1", "a1^3*b1"]), &d).unwrap();
    assert_eq!(piece.len(), 2);
    let mut both = ann.clone();
    both.extend(piece);
    assert_eq!(oracle_rank(&both), 2);
}

#[test]
fn ideal_piece_dimension_against_products() {
    // dim I_δ is the rank of all monomial multiples of the generators.
    let r = f1();
    let i = gens(&r, &["a0^2 - a1^2", "b0^2 - a1^2*b1^2"]);
    for (a, b) in [(2, 0), (3, 2), (4, 3), (2, 2)] {
        let d = deg(&r, &format!("{a},{b}"));
        let basis = r.basis(&d);
        let mut rows = Vec::new();
        for g in i.generators() {
            let gd = g.degree().unwrap();
            let Ok(rest) = d.try_sub(gd) else { continue };
            for m in r.basis(&rest).monomials() {
                let mono = toric_apolarity::MultiPoly::monomial(r.fan(), toric_apolarity::Side::Primal, m.0.clone()).unwrap();
                rows.push(g.multiply(&mono).unwrap().coordinates(&basis).unwrap());
            }
        }
        assert_eq!(ideal_piece(&r, &i, &d).unwrap().len(), oracle_rank(&rows), "({a},{b})");
    }
}

#[test]
fn colon_by_irrelevant_ideal() {
    let r = f1();
    let b = r.fan().irrelevant_ideal();
    let i = gens(&r, &["a0^2*b1", "a1^2*b1"]);
    let d = deg(&r, "2,1");
    let colon = colon_piece(&r, &i, &b, &d).unwrap();
    let target = primal(&r, "a0*a1*b1").coordinates(&r.basis(&d)).unwrap();
    let mut with = colon.clone();
    with.push(target);
    assert_eq!(oracle_rank(&with), colon.len());
    let gap = saturation_gap(&r, &i, &b, &d).unwrap();
    assert!(gap.gap >= 1, "{gap:?}");
}

#[test]
fn saturated_ideals_have_no_gap() {
    let z = fake();
    let cases = [
        (f1(), vec!["a0^2 - a1^2", "b0^2 - a1^2*b1^2"], vec!["2,1", "2,2", "3,2", "4,3"]),
        (f1(), vec!["a0^3 - a1^3", "b0^2 - b1^2*a1^2"], vec!["3,1", "3,2", "4,2"]),
        (p114(), vec!["a^3", "b^3"], vec!["4", "8", "12"]),
        (p114(), vec!["a^3 - b^3", "c"], vec!["4", "8"]),
        (z.clone(), vec!["a1^2", "a2^2"], vec!["3;0", "6;0", "2;1", "4;2"]),
        (z, vec!["a1^3 - a2^3", "a0^5 - a1^4*a2"], vec!["3;0", "6;0"]),
    ];
    for (r, g, degrees) in cases {
        let i = gens(&r, &g);
        let b = r.fan().irrelevant_ideal();
        for d in degrees {
            let gap = saturation_gap(&r, &i, &b, &deg(&r, d)).unwrap();
            assert_eq!(gap.gap, 0, "{g:?} at {d}");
            assert_eq!(gap.cartier, r.fan().is_cartier(&deg(&r, d)));
        }
    }
}

#[test]
fn lengths() {
    let cases = [
        (fake(), vec!["a1^2", "a2^2"], "3;0", 2),
        (fake(), vec!["a0^5 - a1^4*a2", "a1^3 - a2^3"], "3;0", 5),
        (f1(), vec!["a0^2 - a1^2", "b0^2 - a1^2*b1^2"], "1,1", 4),
        (f1(), vec!["a0^3 - a1^3", "b0^2 - b1^2*a1^2"], "1,1", 6),
        (p114(), vec!["a^3", "b^3"], "4", 2),
        (p114(), vec!["a^3 - b^3", "c"], "4", 3),
    ];
    for (r, g, ample, want) in cases {
        let est = length_estimate(&r, &gens(&r, &g), &deg(&r, ample), 3, 12).unwrap();
        assert!(est.stabilized, "{g:?}");
        assert_eq!(est.value, want, "{g:?}");
        assert_eq!(est.samples.len(), 12);
    }
}

#[test]
fn length_refusals() {
    let p = p114();
    let i = gens(&p, &["a^3", "b^3"]);
    assert!(matches!(length_estimate(&p, &i, &deg(&p, "2"), 3, 12), Err(IdealError::NotCartier(_))));
    assert!(matches!(length_estimate(&p, &i, &deg(&p, "4"), 0, 12), Err(IdealError::BadWindow { .. })));
    assert!(matches!(length_estimate(&p, &i, &deg(&p, "4"), 5, 3), Err(IdealError::BadWindow { .. })));
    let short = length_estimate(&p, &gens(&p, &["c"]), &deg(&p, "4"), 3, 4).unwrap();
    assert!(!short.stabilized);
}

#[test]
fn cactus_certificates() {
    let z = fake();
    let c = cactus_certificate(&form(&z, "x0^4*x1*x2"), &gens(&z, &["a1^2", "a2^2"]), &deg(&z, "3;0"), 3, 12, false).unwrap();
    assert_eq!((c.cactus_bound, c.rank_bound), (Some(2), None));

    let p = p114();
    let c = cactus_certificate(&form(&p, "x^2*y^2"), &gens(&p, &["a^3", "b^3"]), &deg(&p, "4"), 3, 12, false).unwrap();
    assert_eq!(c.cactus_bound, Some(2));

    let r = f1();
    let c = cactus_certificate(&form(&r, "x0*x1*y0*y1"), &gens(&r, &["a0^2 - a1^2", "b0^2 - a1^2*b1^2"]), &deg(&r, "1,1"), 3, 12, true)
        .unwrap();
    assert_eq!((c.cactus_bound, c.rank_bound, c.reduced_asserted), (Some(4), Some(4), true));

    let e = cactus_certificate(&form(&r, "x0*x1*y0*y1"), &gens(&r, &["a0^2", "a0*a1"]), &deg(&r, "1,1"), 3, 12, false).unwrap_err();
    assert_eq!(e, IdealError::ContainmentFailed { index: 1 });
}

#[test]
fn ideal_input_errors() {
    let r = f1();
    let e = IdealGens::parse(&r, &["a0 + b0"]).map(|i| ideal_piece(&r, &i, &deg(&r, "1,0")));
    match e {
        Ok(Err(IdealError::NonHomogeneousGenerator { index: 0 })) | Err(Error::Ideal(IdealError::NonHomogeneousGenerator { index: 0 })) => {}
        other => panic!("{other:?}"),
    }
    assert!(IdealGens::parse(&r, &["x0"]).is_err());
}
