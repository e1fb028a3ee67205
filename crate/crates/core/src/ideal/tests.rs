use super::*;
use crate::matroid::{braid_arrangement, Mode};
use crate::parse::parse_polynomial;
use crate::poly::{rat, rat2, vars_from};

fn arrangement(vars: &[&str], forms: &[&str], mode: Mode) -> Arrangement {
    let v = vars_from(vars);
    let forms = forms.iter().map(|f| parse_polynomial(f, &v).unwrap()).collect();
    Arrangement::new(&v, forms, mode, true).unwrap()
}

fn p(a: &Arrangement, s: &str) -> Polynomial {
    parse_polynomial(s, a.vars()).unwrap()
}

#[test]
fn dfold_examples() {
    let b3 = braid_arrangement(3).unwrap();
    assert_eq!(dfold_generators(&b3, &GeneratorSpec::all(2)).unwrap().len(), 3);
    let a = arrangement(&["x", "y"], &["0", "x", "y"], Mode::Projective);
    let g = dfold_generators(&a, &GeneratorSpec::all(2)).unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(g[0].1.to_string(), "x*y");
    let m = arrangement(&["x", "y", "z"], &["0", "x", "x", "x", "y", "z"], Mode::Projective);
    let g = dfold_generators(&m, &GeneratorSpec::all(4)).unwrap();
    assert_eq!(g.len(), 5);
    let mut support: Vec<String> = g.iter().map(|(_, p)| p.to_string()).collect();
    support.sort();
    support.dedup();
    assert_eq!(support, vec!["x^2*y*z", "x^3*y", "x^3*z"]);
    assert!(dfold_generators(&b3, &GeneratorSpec::all(4)).is_err());
}

#[test]
fn groebner_small() {
    let v = vars_from(&["x", "y"]);
    let x = Polynomial::variable(&v, 0);
    let i = IdealWithBasis::new(&v, vec![x.clone()]);
    assert_eq!(i.groebner().unwrap().basis, vec![x.clone()]);

    let s = parse_polynomial("x + y", &v).unwrap();
    let d = parse_polynomial("x - y", &v).unwrap();
    let i = IdealWithBasis::new(&v, vec![s.clone(), d.clone()]);
    let gb = i.groebner_with_cofactors().unwrap();
    let y = Polynomial::variable(&v, 1);
    assert_eq!(gb.basis, vec![y.clone(), x.clone()]);
    let cof = gb.cofactors.as_ref().unwrap();
    // hand elimination: y = (s - d)/2, x = (s + d)/2
    assert_eq!(cof[0], vec![Polynomial::constant(&v, rat2(1, 2)), Polynomial::constant(&v, rat2(-1, 2))]);
    assert_eq!(cof[1], vec![Polynomial::constant(&v, rat2(1, 2)), Polynomial::constant(&v, rat2(1, 2))]);
    for (g, row) in gb.basis.iter().zip(cof) {
        assert_eq!(&(&row[0] * &s) + &(&row[1] * &d), *g);
    }
}

#[test]
fn normal_form_identity() {
    let v = vars_from(&["x", "y"]);
    let x = Polynomial::variable(&v, 0);
    let i = IdealWithBasis::new(&v, vec![x.clone()]);
    let (r, q) = i.normal_form(&x.pow(2)).unwrap();
    assert!(r.is_zero());
    assert_eq!(q[0], x);
    let f = parse_polynomial("x^2 + y^2 + x*y + 3", &v).unwrap();
    let (r, q) = i.normal_form(&f).unwrap();
    assert_eq!(r.to_string(), "y^2 + 3");
    assert_eq!(&(&q[0] * &x) + &r, f);
}

#[test]
fn intro_membership_in_linear_generators() {
    let a = arrangement(&["x", "y"], &["y - 3*x", "x + y", "x - 2*y"], Mode::Projective);
    let f = p(&a, "13*y - 6*x");
    let i = IdealWithBasis::dfold(&a, &GeneratorSpec::all(1)).unwrap();
    assert!(i.member(&f).unwrap());
    let c = i.express_in_generators(&f).unwrap().unwrap();
    let back = c.iter().zip(a.forms()).fold(Polynomial::zero(a.vars()), |acc, (c, l)| &acc + &(c * l));
    assert_eq!(back, f);
    assert!(c.iter().all(|x| x.is_constant()));
}

#[test]
fn bounded_examples() {
    let v = vars_from(&["x", "y"]);
    let f = parse_polynomial("x^2 + x*y", &v).unwrap();
    let a = arrangement(&["x", "y"], &["x", "x", "y"], Mode::Projective);
    let spec = GeneratorSpec::restricted(2, Restriction::Subsets(vec![vec![0, 1], vec![0, 2]]));
    let rep = express_bounded_degree(&f, &a, &spec, 0, &BoundedOptions::default()).unwrap().unwrap();
    assert_eq!(rep.terms.len(), 2);
    assert_eq!(rep.terms[0].1, Polynomial::one(&v));
    assert_eq!(rep.terms[1].1, Polynomial::one(&v));

    // forms (x, y, x+y), d = 2: x^2 = -xy + x(x+y), unique
    let a = arrangement(&["x", "y"], &["x", "y", "x + y"], Mode::Projective);
    let x2 = p(&a, "x^2");
    let rep = express_bounded_degree(&x2, &a, &GeneratorSpec::all(2), 0, &BoundedOptions::default()).unwrap().unwrap();
    assert_eq!(
        rep.terms,
        vec![(vec![0, 1], Polynomial::constant(a.vars(), rat(-1))), (vec![0, 2], Polynomial::one(a.vars()))]
    );
    assert_eq!(rep.expand(&a), x2);

    let x = p(&a, "x");
    assert!(express_bounded_degree(&x, &a, &GeneratorSpec::all(2), -1, &BoundedOptions::default()).unwrap().is_none());
}

#[test]
fn recursive_matches_bounded_on_intro() {
    let a = arrangement(&["x", "y"], &["y - 3*x", "x + y", "x - 2*y"], Mode::Projective);
    let f = p(&a, "13*y - 6*x");
    let rep = express_recursive(&f, &a, 1).unwrap().unwrap();
    assert_eq!(rep.expand(&a), f);
    assert!(express_recursive(&f, &a, 2).unwrap().is_none());
    let lin = express_bounded_degree(&f, &a, &GeneratorSpec::all(1), 0, &BoundedOptions::default()).unwrap().unwrap();
    assert_eq!(lin.expand(&a), f);
    assert_eq!(lin.terms.len(), 3);
}

#[test]
fn recursive_affine_degree_bound() {
    // y ∈ ⟨x, x - 1⟩ = ⟨1⟩, but no representation with constant coefficients
    let a = arrangement(&["x", "y"], &["x", "x - 1"], Mode::Affine);
    let y = p(&a, "y");
    assert!(express_recursive(&y, &a, 1).unwrap().is_none());
    assert!(IdealWithBasis::dfold(&a, &GeneratorSpec::all(1)).unwrap().member(&y).unwrap());
    let f = p(&a, "x^2 + 3*x*y - y");
    let a2 = arrangement(&["x", "y"], &["x", "y - 1", "x + y"], Mode::Affine);
    let f2 = &(&p(&a2, "x") * &p(&a2, "y - 1")) + &(&p(&a2, "3*y + 2") * &p(&a2, "x + y"));
    let rep = express_recursive(&f2, &a2, 1).unwrap().unwrap();
    assert_eq!(rep.expand(&a2), f2);
    assert!(rep.max_coefficient_degree() <= Degree::Finite(1));
    let _ = f;
}

#[test]
fn intersections() {
    let v = vars_from(&["x", "y"]);
    let x = Polynomial::variable(&v, 0);
    let y = Polynomial::variable(&v, 1);
    let ix = IdealWithBasis::new(&v, vec![x.clone()]);
    let iy = IdealWithBasis::new(&v, vec![y.clone()]);
    let both = intersect(&ix, &iy).unwrap();
    assert!(ideal_equal(&both, &IdealWithBasis::new(&v, vec![&x * &y])).unwrap());
    assert!(ideal_equal(&intersect(&ix, &ix).unwrap(), &ix).unwrap());
}

#[test]
fn affine_example_decomposes() {
    let a = arrangement(&["x", "y"], &["x", "y", "x - 1", "y - 1", "x - y"], Mode::Affine);
    let i3 = IdealWithBasis::dfold(&a, &GeneratorSpec::all(3)).unwrap();
    let c1 = power_of_linear_ideal(a.vars(), &[p(&a, "x"), p(&a, "y")], 1);
    let c2 = power_of_linear_ideal(a.vars(), &[p(&a, "x - 1"), p(&a, "y - 1")], 1);
    assert!(ideal_equal(&intersect(&c1, &c2).unwrap(), &i3).unwrap());
}

#[test]
fn power_membership() {
    let a = arrangement(&["x", "y"], &["x", "y", "x - 1"], Mode::Affine);
    let flat = crate::matroid::FlatSet(vec![0]);
    assert!(power_linear_membership(&p(&a, "x^2*y"), &a, &flat, 2).unwrap());
    assert_eq!(order_on_flat(&p(&a, "x^2*y"), &a, &flat, None).unwrap(), 2);
    let shifted = crate::matroid::FlatSet(vec![2]);
    assert!(!power_linear_membership(&p(&a, "x^2"), &a, &shifted, 2).unwrap());
    assert_eq!(order_on_flat(&p(&a, "x^2 - 2*x + 1"), &a, &shifted, None).unwrap(), 2);
    assert_eq!(order_on_flat(&p(&a, "y"), &a, &flat, None).unwrap(), 0);
}

#[test]
fn generic_ideal_is_power_of_maximal() {
    let a = arrangement(&["x", "y"], &["x", "y", "x + y"], Mode::Projective);
    let i = IdealWithBasis::dfold(&a, &GeneratorSpec::all(2)).unwrap();
    assert!(ideal_equal(&i, &maximal_ideal_power(a.vars(), 2)).unwrap());
}
