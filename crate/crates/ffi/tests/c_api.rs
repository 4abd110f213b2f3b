use std::ffi::{CStr, CString};
use std::ptr;

use maturity_ffi::*;

fn take_string(raw: *mut std::ffi::c_char) -> String {
    assert!(!raw.is_null());
    let text = unsafe { CStr::from_ptr(raw) }.to_str().unwrap().to_owned();
    unsafe { maturity_string_free(raw) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(maturity_last_error_message()) }.to_str().unwrap().to_owned()
}

fn cmp_prior(n: usize, p: &str, nu: &str) -> *mut MaturityPrior {
    let (p, nu) = (CString::new(p).unwrap(), CString::new(nu).unwrap());
    let mut prior = ptr::null_mut();
    assert_eq!(unsafe { maturity_prior_cmp(n, p.as_ptr(), nu.as_ptr(), &mut prior) }, MaturityStatus::Ok);
    prior
}

#[test]
fn uniform_predictive_and_sequence_probability() {
    let mut prior = ptr::null_mut();
    unsafe {
        assert_eq!(maturity_prior_uniform(2, &mut prior), MaturityStatus::Ok);
        let mut size = 0;
        assert_eq!(maturity_prior_size(prior, &mut size), MaturityStatus::Ok);
        assert_eq!(size, 2);

        let mut out = ptr::null_mut();
        assert_eq!(maturity_predictive(prior, 1, 1, &mut out), MaturityStatus::Ok);
        assert_eq!(take_string(out), "2/3");
        assert_eq!(maturity_sequence_probability(prior, 2, 1, &mut out), MaturityStatus::Ok);
        assert_eq!(take_string(out), "1/6");
        maturity_prior_free(prior);
    }
}

#[test]
fn verdicts_for_tight_and_loose_priors() {
    let tight = cmp_prior(6, "1/2", "2");
    let loose = cmp_prior(6, "1/2", "1/2");
    let mut verdict = MaturityVerdict::Mixed;
    unsafe {
        assert_eq!(maturity_tightness(tight, &mut verdict), MaturityStatus::Ok);
        assert_eq!(verdict, MaturityVerdict::Tighter);
        assert_eq!(maturity_second_order(loose, &mut verdict), MaturityStatus::Ok);
        assert_eq!(verdict, MaturityVerdict::Looser);
        let mut exact = -1;
        assert_eq!(maturity_prior_is_exact(loose, &mut exact), MaturityStatus::Ok);
        assert_eq!(exact, 0);
        maturity_prior_free(tight);
        maturity_prior_free(loose);
    }
}

#[test]
fn hazard_of_point_mass() {
    let mut prior = ptr::null_mut();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(maturity_prior_degenerate(4, 2, &mut prior), MaturityStatus::Ok);
        let expected = ["1/2", "2/3", "1"];
        for (m, want) in (1..=3).zip(expected) {
            assert_eq!(maturity_streak_hazard(prior, m, &mut out), MaturityStatus::Ok);
            assert_eq!(take_string(out), want);
        }
        maturity_prior_free(prior);
    }
}

#[test]
fn error_statuses_carry_messages() {
    let mut prior = ptr::null_mut();
    let bad = CString::new("3/2").unwrap();
    let garbage = CString::new("half").unwrap();
    unsafe {
        assert_eq!(maturity_prior_binomial(4, bad.as_ptr(), &mut prior), MaturityStatus::InvalidArgument);
        assert!(prior.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(maturity_prior_binomial(4, garbage.as_ptr(), &mut prior), MaturityStatus::ParseError);
        assert_eq!(maturity_prior_binomial(4, ptr::null(), &mut prior), MaturityStatus::NullPointer);
        assert_eq!(maturity_prior_uniform(4, ptr::null_mut()), MaturityStatus::NullPointer);

        let mut size = 0;
        assert_eq!(maturity_prior_size(ptr::null(), &mut size), MaturityStatus::NullPointer);

        assert_eq!(maturity_prior_degenerate(3, 3, &mut prior), MaturityStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(maturity_predictive(prior, 1, 0, &mut out), MaturityStatus::ZeroProbabilityHistory);
        assert_eq!(maturity_predictive(prior, 3, 3, &mut out), MaturityStatus::HistoryFull);
        assert_eq!(maturity_predictive(prior, 1, 2, &mut out), MaturityStatus::InvalidArgument);
        assert_eq!(maturity_predictive(prior, 1, 1, &mut out), MaturityStatus::Ok);
        assert_eq!(take_string(out), "1");
        assert!(last_error().is_empty());
        maturity_prior_free(prior);
        maturity_prior_free(ptr::null_mut());
    }
}

#[test]
fn json_reports() {
    let approx = cmp_prior(3, "1/2", "1/2");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(maturity_extend_json(approx, 2, &mut out), MaturityStatus::ApproximatePrior);
        assert_eq!(maturity_classify_json(approx, &mut out), MaturityStatus::Ok);
        let classify: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(classify["schema"], "1");
        assert_eq!(classify["tightness"]["verdict"], "LOOSER");
        assert_eq!(classify["prior"]["mode"], "approximate");
        maturity_prior_free(approx);

        let json = CString::new(r#"{"N": 2, "pmf": ["0", "1", "0"]}"#).unwrap();
        let mut prior = ptr::null_mut();
        assert_eq!(maturity_prior_from_json(json.as_ptr(), &mut prior), MaturityStatus::Ok);
        assert_eq!(maturity_extend_json(prior, 2, &mut out), MaturityStatus::Ok);
        let extend: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(extend["results"][0]["verdict"], "INFEASIBLE");
        assert_eq!(extend["results"][1]["verdict"], "INFEASIBLE");
        maturity_prior_free(prior);

        let broken = CString::new(r#"{"N": 3, "pmf": ["1"]}"#).unwrap();
        assert_eq!(maturity_prior_from_json(broken.as_ptr(), &mut prior), MaturityStatus::ParseError);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/maturity.h")).unwrap();
    for name in [
        "maturity_prior_binomial",
        "maturity_prior_beta_binomial",
        "maturity_prior_cmp",
        "maturity_prior_hypergeometric",
        "maturity_prior_degenerate",
        "maturity_prior_uniform",
        "maturity_prior_from_json",
        "maturity_prior_free",
        "maturity_prior_size",
        "maturity_prior_is_exact",
        "maturity_predictive",
        "maturity_sequence_probability",
        "maturity_streak_hazard",
        "maturity_tightness",
        "maturity_second_order",
        "maturity_classify_json",
        "maturity_extend_json",
        "maturity_string_free",
        "maturity_last_error_message",
        "typedef struct MaturityPrior MaturityPrior",
        "MATURITY_STATUS_ZERO_PROBABILITY_HISTORY",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/maturity.h");
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "clang", "gcc"]
        .into_iter()
        .find(|cc| std::process::Command::new(cc).arg("--version").output().is_ok())
        .ok_or(())
}
