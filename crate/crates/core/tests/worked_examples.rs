//! Worked examples reproduced exactly.

use slicesyl::equivalence::{are_equivalent, conjugator};
use slicesyl::sylvester::*;
use slicesyl::{DomainMode, FieldPoly, IdemSign, QuatConst, ScalarElem, SliceFn};

use DomainMode::{Product, Slice};

fn jay() -> ScalarElem {
    ScalarElem::j(Product).unwrap()
}

fn int(n: i64, mode: DomainMode) -> ScalarElem {
    ScalarElem::from_i64(n, mode)
}

fn sf(c: [ScalarElem; 4]) -> SliceFn {
    SliceFn::new(c).unwrap()
}

#[test]
fn simple_eigenvalue_example() {
    let z = || int(0, Product);
    let f = sf([z(), jay(), z(), z()]);
    let g = sf([int(1, Product), z(), z(), int(2, Product) * jay()]);
    assert_eq!(f.vector_part().symmetrized(), int(-1, Product));
    assert_eq!(g.vector_part().symmetrized(), int(-4, Product));
    let r = classify(&f, &g).unwrap();
    assert_eq!(r.char_poly, FieldPoly::from_ints(&[0, 16, -4, -4, 1], Product));
    assert_eq!(r.rank, 3);
    assert_eq!(sylvester_matrix(&f, &g).unwrap().rank(), 3);
}

#[test]
fn double_eigenvalue_example_and_intertwiner() {
    let z = || int(0, Product);
    let f = sf([int(1, Product), -jay(), z(), z()]);
    let g = &f * &SliceFn::j(Product);
    assert_eq!(g, sf([z(), z(), int(1, Product), -jay()]));
    assert!(g.vector_part().symmetrized().is_zero());
    let r = classify(&f, &g).unwrap();
    assert_eq!(r.char_poly, FieldPoly::from_ints(&[0, 0, 4, -4, 1], Product));
    assert_eq!(r.rank, 3);
    assert!(apply_sylvester(&f, &g, &f.conjugate()).unwrap().is_zero());
    // f and −g have different real parts, so they are not equivalent
    assert!(!are_equivalent(&f, &-&g).unwrap());
}

#[test]
fn idempotent_against_its_negative() {
    let sigma = SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::i(), Product).unwrap();
    let minus = -&sigma;
    for chi in [
        SliceFn::from_scalar(ScalarElem::x(Product)),
        SliceFn::from_scalar(int(1, Product) + jay()),
        sigma.conjugate(),
    ] {
        assert!(apply_sylvester(&sigma, &minus, &chi).unwrap().is_zero());
    }
}

#[test]
fn rank4_solution_of_i_and_2j() {
    let f = SliceFn::i(Product);
    let g = SliceFn::j(Product).scale(&int(2, Product));
    let b = SliceFn::one(Product);
    let sol = solve_rank4(&f, &g, &b).unwrap();
    let third = ScalarElem::from_ratio(1, 3, Product);
    assert_eq!(sol.chi, SliceFn::from_ints([0, 1, -2, 0], Product).scale(&third));
    assert_eq!(apply_sylvester(&f, &g, &sol.chi).unwrap(), b);
}

#[test]
fn particular_solution_sign_through_a_unit() {
    // f = i, g = j: f ≃ −g, and b = i + j satisfies f^c*b + b*g = 0
    let (f, g) = (SliceFn::i(Slice), SliceFn::j(Slice));
    let b = SliceFn::from_ints([0, 1, 1, 0], Slice);
    assert!(rank2_image_condition(&f, &g, &b).unwrap());
    let delta = SliceFn::i(Slice);
    let f_delta_0 = (&f * &delta).real_part().clone();
    assert_eq!(f_delta_0, int(-1, Slice));
    let db = &delta * &b;
    let inv = (int(2, Slice) * f_delta_0).invert().unwrap();
    let printed = db.scale(&-&inv);
    let corrected = db.scale(&inv);
    assert_eq!(apply_sylvester(&f, &g, &printed).unwrap(), -&b);
    assert_eq!(apply_sylvester(&f, &g, &corrected).unwrap(), b);
    let general = partsol(&f, &g, &delta, &SliceFn::zero(Slice), &b).unwrap();
    assert_eq!(general, corrected);
}

#[test]
fn particular_solution_through_the_vector_part() {
    let (f, g) = (SliceFn::i(Slice), SliceFn::j(Slice));
    let b = SliceFn::from_ints([0, 1, 1, 0], Slice);
    let fv = f.vector_part();
    let chi = (&fv * &b).scale(&-(int(2, Slice) * fv.symmetrized()).invert().unwrap());
    assert_eq!(apply_sylvester(&f, &g, &chi).unwrap(), b);
}

#[test]
fn asymmetric_rank3_kernels() {
    let one = || int(1, Product);
    let z = || int(0, Product);
    let h = sf([jay() - one(), one(), one(), z()]);
    let ht = sf([z(), one(), z(), one()]);
    assert_eq!(h.symmetrized(), int(2, Product) - int(2, Product) * jay());
    assert_eq!(ht.symmetrized(), int(2, Product));
    let jj_plus_k = sf([z(), z(), jay(), one()]);
    let jj_minus_k = sf([z(), z(), jay(), -one()]);
    assert_eq!(*(&(&h * &jj_plus_k) * &ht).real_part(), int(-2, Product) * jay());
    assert!((&(&ht.conjugate() * &jj_minus_k) * &h.conjugate()).real_part().is_zero());

    let half = ScalarElem::from_ratio(1, 2, Product);
    let build = |a: &ScalarElem, b: &ScalarElem| {
        let i = SliceFn::i(Product);
        let f = &SliceFn::one(Product) + &(&(&h * &i.scale(&(&jay() * a))) * &h.star_inverse().unwrap());
        let g = &(&ht.star_inverse().unwrap() * &i.scale(&(&jay() * b))) * &ht;
        (f, g)
    };
    // (zero-real-part side, idempotent side)
    let check = |null: (&SliceFn, &SliceFn), idem: (&SliceFn, &SliceFn)| {
        for (f, g) in [null, idem] {
            assert_eq!(branch_of(f, g), Branch::Rank3);
            assert_eq!(kernel_by_elimination(f, g).unwrap().len(), 1);
        }
        let k = kernel_by_elimination(null.0, null.1).unwrap();
        assert!(k[0].is_zero_divisor() && k[0].real_part().is_zero());
        assert!(rank3_idempotent_in_kernel(null.0, null.1).unwrap().is_none());
        let sigma = rank3_idempotent_in_kernel(idem.0, idem.1).unwrap().expect("kernel idempotent");
        assert!(sigma.is_idempotent());
        assert!(apply_sylvester(idem.0, idem.1, &sigma).unwrap().is_zero());
    };
    for tau in [ScalarElem::x(Product), int(2, Product), ScalarElem::from_ratio(1, 3, Product)] {
        let (minus, plus) = (&tau - &half, &tau + &half);
        // f_v conjugate to 𝒥(τ+½)i: ker S_{f,g} holds an idempotent, ker S_{g,f} does not
        let (f, g) = build(&plus, &minus);
        check((&g, &f), (&f, &g));
        // literal construction with τ−½ in f: the roles are exchanged
        let (f, g) = build(&minus, &plus);
        check((&f, &g), (&g, &f));
    }
}

#[test]
fn basic_idempotents_are_conjugate() {
    let l = |u: QuatConst| SliceFn::basic_idempotent(IdemSign::Plus, &u, Product).unwrap();
    let (a, b) = (l(QuatConst::i()), l(QuatConst::k()));
    let w = conjugator(&a, &b).unwrap();
    assert!(w.verifies(&a, &b));
}
