use twisted_calculus::envelope::{u_mul, xi_symm};
use twisted_calculus::lie::nonabelian_catalog;
use twisted_calculus::phi::make_phi;
use twisted_calculus::rational::{frac, int};
use twisted_calculus::{Exec, MultiIndex, OrderingSpec, SPoly, StructureConstants, UElement, XiTables};

fn tables(lie: &StructureConstants, spec: &OrderingSpec, n: u32) -> XiTables {
    XiTables::build(&make_phi(lie, spec, n).unwrap(), n, Exec::default()).unwrap()
}

#[test]
fn symmetric_xi_is_symmetrization_up_to_degree_five() {
    for lie in nonabelian_catalog() {
        let t = tables(&lie, &OrderingSpec::Symmetric, 5);
        for a in MultiIndex::up_to_degree(lie.dim(), 5) {
            let f = SPoly::monomial(a.clone(), int(1));
            assert_eq!(t.xi_phi(&f).unwrap(), xi_symm(&f, &lie), "{} {}", lie.name(), a.render("x"));
        }
    }
}

#[test]
fn xi_is_the_identity_on_linear_and_constant_terms() {
    for spec in [OrderingSpec::Symmetric, OrderingSpec::Classical] {
        let lie = StructureConstants::su2();
        let t = tables(&lie, &spec, 4);
        assert_eq!(t.xi_phi(&SPoly::one(3)).unwrap(), UElement::one(3));
        for i in 0..3 {
            assert_eq!(t.xi_phi(&SPoly::gen(3, i)).unwrap(), UElement::gen(3, i));
        }
    }
}

#[test]
fn xi_round_trip_on_every_ordering() {
    let lie = StructureConstants::sl2();
    for spec in [OrderingSpec::Symmetric, OrderingSpec::Classical] {
        let t = tables(&lie, &spec, 4);
        for a in MultiIndex::up_to_degree(3, 4) {
            let f = SPoly::monomial(a.clone(), int(1));
            assert_eq!(t.xi_inverse(&t.xi_phi(&f).unwrap()).unwrap(), f);
            let u = UElement::monomial(a, int(1));
            assert_eq!(t.xi_phi(&t.xi_inverse(&u).unwrap()).unwrap(), u);
        }
    }
}

#[test]
fn pbw_commutation() {
    for lie in nonabelian_catalog() {
        let n = lie.dim();
        for i in 0..n {
            for j in 0..n {
                let (xi, xj) = (UElement::gen(n, i), UElement::gen(n, j));
                let c = u_mul(&xi, &xj, &lie).sub(&u_mul(&xj, &xi, &lie));
                let want = lie.bracket(i, j).into_iter().fold(UElement::zero(n), |acc, (k, v)| {
                    acc.add(&UElement::gen(n, k).scale(&v))
                });
                assert_eq!(c, want, "{} [{i},{j}]", lie.name());
            }
        }
    }
}

#[test]
fn star_unit_and_linear_products() {
    let lie = StructureConstants::heisenberg();
    let t = tables(&lie, &OrderingSpec::Symmetric, 4);
    let (x1, x2, x3) = (SPoly::gen(3, 0), SPoly::gen(3, 1), SPoly::gen(3, 2));
    let one = SPoly::one(3);
    assert_eq!(t.star(&one, &x1, &lie).unwrap(), x1);
    assert_eq!(t.star(&x2, &one, &lie).unwrap(), x2);
    let want = x1.mul(&x2).add(&x3.scale(&frac(1, 2)));
    assert_eq!(t.star(&x1, &x2, &lie).unwrap(), want);
    let commutator = t.star(&x1, &x2, &lie).unwrap().sub(&t.star(&x2, &x1, &lie).unwrap());
    assert_eq!(commutator, x3);
}

#[test]
fn abelian_star_is_the_commutative_product() {
    let lie = StructureConstants::abelian(3);
    let t = tables(&lie, &OrderingSpec::Symmetric, 4);
    for a in MultiIndex::up_to_degree(3, 2) {
        for b in MultiIndex::up_to_degree(3, 2) {
            let (f, g) = (SPoly::monomial(a.clone(), int(1)), SPoly::monomial(b, int(1)));
            assert_eq!(t.star(&f, &g, &lie).unwrap(), f.mul(&g));
        }
    }
}

#[test]
fn deformed_partials_lower_degree() {
    let lie = StructureConstants::su2();
    let t = tables(&lie, &OrderingSpec::Symmetric, 5);
    for a in MultiIndex::up_to_degree(3, 4) {
        let u = UElement::monomial(a, int(1));
        for i in 0..3 {
            let d = t.deformed_partial(i, &u).unwrap();
            assert!(d.is_zero() || d.degree() < u.degree().max(1));
        }
    }
    assert_eq!(t.deformed_partial(0, &UElement::gen(3, 0)).unwrap(), UElement::one(3));
}

#[test]
fn tables_refuse_degrees_beyond_their_range() {
    let lie = StructureConstants::su2();
    let phi = make_phi(&lie, &OrderingSpec::Symmetric, 3).unwrap();
    assert!(XiTables::build(&phi, 4, Exec::Sequential).is_err());
    let t = XiTables::build(&phi, 2, Exec::Sequential).unwrap();
    assert!(t.xi_phi(&SPoly::monomial(MultiIndex::from_slice(&[3, 0, 0]), int(1))).is_err());
}
