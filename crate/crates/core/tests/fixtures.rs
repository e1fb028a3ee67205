//! Every expectation recorded in fixtures/manifest.toml.

use pfdkit::decomp::{exponent_census, minimal_decomposition, primary_decomposition, verify_decomposition};
use pfdkit::decomp::{exists_pfd_via_flats, DEFAULT_COMPONENT_CAP};
use pfdkit::fixtures::{load_manifest, ComponentSpec, FixtureEntry};
use pfdkit::ideal::{GeneratorSpec, IdealWithBasis};
use pfdkit::matroid::census;
use pfdkit::pfd::{check_pfd, reduce_and_pfd, reduced_exp, Method, PfdOptions, RationalFunction};

fn entries() -> Vec<FixtureEntry> {
    load_manifest().expect("manifest parses").fixture
}

fn specs(comps: &[pfdkit::decomp::PrimaryComponent]) -> Vec<ComponentSpec> {
    comps
        .iter()
        .map(|c| ComponentSpec { flat: c.flat.indices().iter().map(|i| i + 1).collect(), exponent: c.exponent })
        .collect()
}

#[test]
fn problems_parse_with_declared_form_counts() {
    for f in entries() {
        let p = f.load_problem().unwrap_or_else(|e| panic!("{}: {e}", f.name));
        if let Some(n) = f.forms {
            assert_eq!(p.denominators.len(), n, "{}", f.name);
        }
    }
}

#[test]
fn reductions_remove_listed_forms() {
    for f in entries() {
        let Some(removed) = &f.removed else { continue };
        let rf = RationalFunction::from_problem(&f.load_problem().unwrap()).unwrap();
        let red = reduced_exp(&rf).unwrap();
        let got: Vec<usize> = red.removed.iter().map(|i| i + 1).collect();
        assert_eq!(&got, removed, "{}", f.name);
    }
}

#[test]
fn listed_documents_are_valid() {
    for f in entries() {
        let rf = match f.valid_documents.is_empty() {
            true => continue,
            false => RationalFunction::from_problem(&f.load_problem().unwrap()).unwrap(),
        };
        for (name, doc) in f.load_documents().unwrap() {
            let res = doc.to_result(&rf).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(check_pfd(&res, &rf), Ok(()), "{name}");
        }
    }
}

#[test]
fn checks_agree_between_flats_and_groebner() {
    for f in entries() {
        if f.checks.is_empty() {
            continue;
        }
        let p = f.load_problem().unwrap();
        let a = p.arrangement().unwrap();
        let num = p.numerator().unwrap();
        for c in &f.checks {
            let flats = exists_pfd_via_flats(num, &a, c.degree).unwrap();
            let gb = IdealWithBasis::dfold(&a, &GeneratorSpec::all(c.degree)).unwrap().member(num).unwrap();
            assert_eq!(flats.holds, c.holds, "{} degree {}", f.name, c.degree);
            assert_eq!(gb, c.holds, "{} degree {}", f.name, c.degree);
            assert_eq!(flats.witness.is_some(), !c.holds);
        }
    }
}

#[test]
fn decompositions_match_expectations() {
    for f in entries() {
        let a = f.load_problem().unwrap().arrangement().unwrap();
        for e in &f.decompositions {
            let comps = primary_decomposition(&a, e.d).unwrap();
            if let Some(census) = &e.census {
                let got: Vec<[usize; 2]> = exponent_census(&comps).iter().map(|&(x, k)| [x as usize, k]).collect();
                assert_eq!(&got, census, "{}", f.name);
            }
            if let Some(expected) = &e.components {
                assert_eq!(&specs(&comps), expected, "{}", f.name);
            }
            if let Some(expected) = &e.minimal {
                assert_eq!(&specs(&minimal_decomposition(&a, e.d, &comps).unwrap()), expected, "{}", f.name);
            }
            if e.verify {
                assert!(verify_decomposition(&a, e.d, &comps, DEFAULT_COMPONENT_CAP).unwrap(), "{}", f.name);
            }
        }
    }
}

#[test]
fn flat_census_matches() {
    for f in entries() {
        let Some(e) = &f.flats else { continue };
        let a = f.load_problem().unwrap().arrangement().unwrap();
        let flats: Vec<_> = a.flats_min_size(e.min_size).into_iter().filter(|s| e.with_top || s.len() < a.len()).collect();
        let got: Vec<[usize; 2]> = census(&flats).into_iter().map(|(s, k)| [s, k]).collect();
        assert_eq!(got, e.census, "{}", f.name);
    }
}

#[test]
fn decompositions_have_expected_shape() {
    for f in entries() {
        let Some(e) = &f.pfd else { continue };
        let rf = RationalFunction::from_problem(&f.load_problem().unwrap()).unwrap();
        let method = match e.method.as_deref() {
            Some(m) => m.parse::<Method>().unwrap(),
            None => Method::Auto,
        };
        let res = reduce_and_pfd(&rf, &PfdOptions { method, ..Default::default() }).unwrap().expect("decomposes");
        assert_eq!(res.degree, e.degree, "{}", f.name);
        if let Some(t) = e.terms {
            assert_eq!(res.terms.len(), t, "{}", f.name);
        }
        if let Some(c) = e.constant_numerators {
            assert_eq!(res.terms.iter().all(|t| t.numerator.is_constant()), c, "{}", f.name);
        }
        assert_eq!(check_pfd(&res, &rf), Ok(()), "{}", f.name);
    }
}
