use super::*;
use crate::parse::{parse_polynomial, parse_problem};
use crate::poly::vars_from;

fn rf(vars: &[&str], num: &str, forms: &[&str], mode: Mode) -> RationalFunction {
    let v = vars_from(vars);
    let forms = forms.iter().map(|f| parse_polynomial(f, &v).unwrap()).collect();
    RationalFunction::new(parse_polynomial(num, &v).unwrap(), forms, mode).unwrap()
}

fn intro() -> RationalFunction {
    rf(&["x", "y"], "13*y - 6*x", &["y - 3*x", "x + y", "x - 2*y"], Mode::Projective)
}

fn term(f: &RationalFunction, num: &str, den: &[usize]) -> PfdTerm {
    PfdTerm { numerator: parse_polynomial(num, f.vars()).unwrap(), denominator: den.to_vec() }
}

fn result(degree: usize, terms: Vec<PfdTerm>) -> PfdResult {
    PfdResult { degree, terms, method: Method::Linear, certification: Certification::Requested, iterative: false }
}

#[test]
fn intro_three_constant_terms() {
    let f = intro();
    for method in [Method::Auto, Method::Linear, Method::Gb, Method::Recursive] {
        let opts = PfdOptions { method, ..Default::default() };
        let r = pfd(&f, &opts).unwrap().unwrap();
        assert_eq!(r.degree, 1, "{method}");
        assert!(r.terms.iter().all(|t| t.numerator.is_constant() && t.denominator.len() == 2));
        assert_eq!(r.certification, Certification::Maximal);
        assert!(verify_pfd(&r, &f), "{method}");
    }
    let r = pfd(&f, &PfdOptions::default()).unwrap().unwrap();
    assert_eq!(r.terms.len(), 3);
}

#[test]
fn printed_intro_decomposition_verifies() {
    let f = intro();
    let printed = result(1, vec![term(&f, "1", &[1, 2]), term(&f, "2", &[0, 2]), term(&f, "-5", &[0, 1])]);
    assert!(verify_pfd(&printed, &f));
    let mut flipped = printed.clone();
    flipped.terms[1].numerator = flipped.terms[1].numerator.scale(&crate::poly::rat(-1));
    assert_eq!(check_pfd(&flipped, &f), Err("terms do not recombine to the numerator".into()));
}

#[test]
fn verify_rejects_bad_shapes() {
    let f = intro();
    let out_of_range = result(1, vec![term(&f, "1", &[1, 3])]);
    assert!(!verify_pfd(&out_of_range, &f));
    let too_high = result(1, vec![term(&f, "x", &[1, 2])]);
    assert!(check_pfd(&too_high, &f).unwrap_err().contains("degree"));
}

#[test]
fn spurious_pole_removed() {
    let f = rf(&["x", "y"], "x*(13*y - 6*x)", &["x", "y - 3*x", "x + y", "x - 2*y"], Mode::Projective);
    let red = reduced_exp(&f).unwrap();
    assert_eq!(red.removed, vec![0]);
    assert_eq!(red.kept, vec![1, 2, 3]);
    assert_eq!(red.function.numerator().to_string(), "-6*x + 13*y");
    assert!(red.function.first_divisor().unwrap().is_none());
    assert!(matches!(pfd(&f, &PfdOptions::default()), Err(Error::Precondition(_))));
    let r = reduce_and_pfd(&f, &PfdOptions::default()).unwrap().unwrap();
    assert_eq!(r.degree, 2);
    assert!(verify_pfd(&r, &f));
}

#[test]
fn reduction_to_polynomial() {
    let f = rf(&["x", "y"], "x*y", &["x", "y"], Mode::Projective);
    let red = reduced_exp(&f).unwrap();
    assert!(red.function.is_empty());
    assert_eq!(red.function.numerator().to_string(), "1");
    let r = reduce_and_pfd(&f, &PfdOptions::default()).unwrap().unwrap();
    assert_eq!((r.degree, r.terms.len()), (2, 1));
    assert!(r.terms[0].denominator.is_empty());
    assert!(verify_pfd(&r, &f));
    let unchanged = reduced_exp(&intro()).unwrap();
    assert!(unchanged.removed.is_empty());
    assert_eq!(unchanged.function, intro());
}

#[test]
fn square_over_three_lines() {
    let f = rf(&["x", "y"], "x^2", &["x", "y", "x + y"], Mode::Projective);
    let r = reduce_and_pfd(&f, &PfdOptions::default()).unwrap().unwrap();
    assert_eq!(r.degree, 2);
    let rendered: Vec<(String, Vec<usize>)> =
        r.terms.iter().map(|t| (t.numerator.to_string(), t.denominator.clone())).collect();
    assert_eq!(rendered, vec![("1".to_string(), vec![1]), ("-1".to_string(), vec![2])]);
    assert!(verify_pfd(&r, &f));
}

#[test]
fn generic_examples() {
    let f = rf(&["x", "y"], "x*y", &["x", "y", "x + y"], Mode::Projective);
    // x divides the numerator, so call the generic path directly
    let r = pfd_generic(&f).unwrap().unwrap();
    assert_eq!(r.terms, vec![term(&f, "1", &[2])]);
    let g = rf(&["x", "y"], "x^2", &["x", "y", "x + y"], Mode::Projective);
    let r = pfd_generic(&g).unwrap().unwrap();
    assert_eq!(r.terms, vec![term(&g, "1", &[1]), term(&g, "-1", &[2])]);
    assert!(verify_pfd(&r, &g));
    let bad = rf(&["x", "y"], "x", &["x", "y", "x + y"], Mode::Projective);
    assert!(matches!(pfd_generic(&bad), Err(Error::Precondition(_))));
    let dependent = rf(&["x", "y"], "x^2", &["x", "2*x", "y"], Mode::Projective);
    assert!(matches!(pfd_generic(&dependent), Err(Error::Precondition(_))));
}

#[test]
fn generic_matches_other_methods() {
    let f = rf(&["x", "y", "z"], "x^2*y + 3*z^3 - y*z^2", &["x", "y", "z", "x + y + z", "x - 2*y + 5*z"], Mode::Projective);
    let g = pfd_generic(&f).unwrap().unwrap();
    assert_eq!(g.degree, 3);
    for method in [Method::Auto, Method::Linear, Method::Recursive, Method::Gb] {
        let r = pfd(&f, &PfdOptions { method, ..Default::default() }).unwrap().unwrap();
        assert_eq!(r.terms, g.terms, "{method}");
    }
}

#[test]
fn affine_gap_yields_no_decomposition() {
    let f = rf(&["x", "y"], "y", &["x", "x - 1"], Mode::Affine);
    assert!(pfd(&f, &PfdOptions::default()).unwrap().is_none());
    assert!(pfd(&f, &PfdOptions { method: Method::Gb, ..Default::default() }).unwrap().is_none());
}

#[test]
fn affine_decomposition() {
    let f = rf(&["x", "y"], "x^2 + y^2 - x - y", &["x", "y", "x - 1", "y - 1", "x - y"], Mode::Affine);
    for method in [Method::Auto, Method::Linear, Method::Gb, Method::Recursive] {
        let r = pfd(&f, &PfdOptions { method, ..Default::default() }).unwrap().unwrap();
        assert!(verify_pfd(&r, &f), "{method}");
        assert_eq!(r.degree, 2, "{method}");
    }
}

#[test]
fn forced_degree_and_caps() {
    let f = intro();
    assert!(matches!(pfd(&f, &PfdOptions { degree: Some(4), ..Default::default() }), Err(Error::Invalid(_))));
    assert!(pfd(&f, &PfdOptions { degree: Some(2), ..Default::default() }).unwrap().is_none());
    let r = pfd(&f, &PfdOptions { degree: Some(1), ..Default::default() }).unwrap().unwrap();
    assert_eq!(r.certification, Certification::Requested);
}

#[test]
fn restricted_generators_give_lower_bound() {
    let f = intro();
    let opts = PfdOptions { restriction: Restriction::Subsets(vec![vec![0], vec![1]]), ..Default::default() };
    let r = pfd(&f, &opts).unwrap().unwrap();
    assert_eq!(r.certification, Certification::LowerBound);
    assert!(verify_pfd(&r, &f));
    assert!(r.terms.iter().all(|t| t.denominator != vec![0, 1]));
}

#[test]
fn removed_form_cancels_against_a_repeated_copy() {
    // forms 1 and 2 coincide; the numerator only uses generators with form 2
    let f = rf(&["x", "y", "z"], "(x + y)*(x*(y + z) + y*z)", &["x + y", "2*x + 2*y", "y + z", "z"], Mode::Projective);
    let opts = PfdOptions { restriction: Restriction::Subsets(vec![vec![1, 2], vec![1, 3]]), ..Default::default() };
    let r = reduce_and_pfd(&f, &opts).unwrap().unwrap();
    assert_eq!(r.certification, Certification::LowerBound);
    assert_eq!(r.degree, 2);
    assert_eq!(r.terms.len(), 2);
    assert!(verify_pfd(&r, &f));
}

#[test]
fn iterative_refinement_reaches_direct_degree() {
    let f = rf(&["x", "y", "z"], "x^2*y + 3*z^3 - y*z^2", &["x", "y", "z", "x + y + z", "x - 2*y + 5*z"], Mode::Projective);
    let direct = pfd(&f, &PfdOptions::default()).unwrap().unwrap();
    let it = pfd(&f, &PfdOptions { iterative: true, ..Default::default() }).unwrap().unwrap();
    assert!(it.iterative);
    assert!(verify_pfd(&it, &f));
    assert_eq!(it.degree, direct.degree);
    assert_eq!(it.terms, direct.terms);
}

#[test]
fn reducible_terms() {
    let f = rf(&["x", "y"], "x*(x + 2*y)", &["x", "y"], Mode::Projective);
    assert!(reducible_term_criterion(&f, 1).unwrap());
    let g = rf(&["x", "y"], "x + y", &["x", "y"], Mode::Projective);
    assert!(!reducible_term_criterion(&g, 1).unwrap());
    assert!(reducible_term_criterion(&g, 2).is_err());
}

#[test]
fn one_numerator_two_decompositions() {
    let f = rf(
        &["x", "y", "z"],
        "2*x^2*y^2 - 2*y^4 + 12*x^2*y*z + 4*x*y^2*z - 2*y^3*z + 10*x^2*z^2 + 4*x*y*z^2",
        &["x - y", "y + z", "z", "x + y"],
        Mode::Projective,
    );
    // every displayed term carries y + z, so the expression has a spurious pole
    assert!(reducible_term_criterion(&f, 3).unwrap());
    assert_eq!(f.first_divisor().unwrap(), Some(1));
    let one = result(3, vec![term(&f, "7*x", &[0]), term(&f, "2*y", &[2]), term(&f, "3*x", &[3])]);
    let two = result(
        3,
        vec![term(&f, "10", &[]), term(&f, "2*x + 5*y", &[0]), term(&f, "2*y", &[2]), term(&f, "-2*x - 5*y", &[3])],
    );
    assert!(verify_pfd(&one, &f));
    assert!(verify_pfd(&two, &f));
    let ours = reduce_and_pfd(&f, &PfdOptions::default()).unwrap().unwrap();
    assert_eq!(ours.degree, 3);
    assert!(verify_pfd(&ours, &f));
}

#[test]
fn document_round_trip() {
    let f = intro();
    let r = pfd(&f, &PfdOptions::default()).unwrap().unwrap();
    let text = render_document(&r, &f);
    assert!(text.starts_with("mode: projective\nvars: x y\ndegree: 1\n"));
    let back = parse_document(&text).unwrap().to_result(&f).unwrap();
    assert_eq!(back, r);
    let json = render_json(&r, &f);
    let back = parse_document(&json).unwrap().to_result(&f).unwrap();
    assert_eq!(back, r);
    let truncated = text.replace("terms: 3", "terms: 4");
    assert!(parse_document(&truncated).is_err());
}

#[test]
fn problem_file_entry_point() {
    let text = "mode: projective\nvars: x y\nnumerator: x^2\ndenominators:\n  x\n  y\n  x + y\n";
    let f = RationalFunction::from_problem(&parse_problem(text).unwrap()).unwrap();
    assert_eq!(f.len(), 3);
    assert_eq!(f.to_problem().render(), text);
}
