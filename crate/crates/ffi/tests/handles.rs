use std::ffi::{c_char, CStr, CString};
use std::ptr;

use switchform_ffi::*;

fn c(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn take(text: *mut c_char) -> String {
    let owned = CStr::from_ptr(text).to_str().unwrap().to_owned();
    sf_string_free(text);
    owned
}

unsafe fn last_error() -> String {
    let msg = sf_last_error_message();
    assert!(!msg.is_null());
    CStr::from_ptr(msg).to_str().unwrap().to_owned()
}

unsafe fn model(json: &str) -> *mut SfModel {
    let mut m = ptr::null_mut();
    assert_eq!(sf_model_from_instance_json(c(json).as_ptr(), &mut m), SfStatus::Ok);
    m
}

#[test]
fn bv_exact_model_solves_to_brute_force_minimum() {
    unsafe {
        let m = model(r#"{"kind":"bv_exact","sigma":2,"T":"4","N":4}"#);
        let (mut vars, mut rows) = (0, 0);
        assert_eq!(sf_model_size(m, &mut vars, &mut rows), SfStatus::Ok);
        assert_eq!((vars, rows), (8, 8));

        let mut priced = ptr::null_mut();
        let objective = c(r#"{"T":"4","N":4,"values":["-1","1","-1","0"]}"#);
        assert_eq!(sf_model_attach_objective_json(m, objective.as_ptr(), &mut priced), SfStatus::Ok);
        let mut sol = ptr::null_mut();
        assert_eq!(sf_model_solve(priced, &mut sol), SfStatus::Ok);
        let mut status = SfLpStatus::Infeasible;
        assert_eq!(sf_solution_status(sol, &mut status), SfStatus::Ok);
        assert_eq!(status, SfLpStatus::Optimal);
        let mut value = ptr::null_mut();
        assert_eq!(sf_solution_value(sol, &mut value), SfStatus::Ok);
        assert_eq!(take(value), "-1");
        let mut point = ptr::null_mut();
        assert_eq!(sf_solution_point_json(sol, &mut point), SfStatus::Ok);
        let point: serde_json::Value = serde_json::from_str(&take(point)).unwrap();
        assert_eq!(point.as_object().unwrap().len(), 8);

        sf_solution_free(sol);
        sf_model_free(priced);
        sf_model_free(m);
    }
}

#[test]
fn lp_text_round_trips() {
    unsafe {
        let m = model(r#"{"kind":"dwell","L":"2","l":"1","T":"4","N":4}"#);
        let mut text = ptr::null_mut();
        assert_eq!(sf_model_to_lp_text(m, &mut text), SfStatus::Ok);
        let text = take(text);
        let mut back = ptr::null_mut();
        assert_eq!(sf_model_from_lp_text(c(&text).as_ptr(), &mut back), SfStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(sf_model_to_lp_text(back, &mut again), SfStatus::Ok);
        assert_eq!(take(again), text);
        sf_model_free(back);
        sf_model_free(m);
    }
}

#[test]
fn fix_and_check_separates_the_counterexample() {
    unsafe {
        let point = c(r#"{"u1":"0","u2":"1","u3":"1/2","u4":"1/2"}"#);
        let mut admitted = true;
        let dwell = model(r#"{"kind":"dwell","L":"2","l":"0","T":"4","N":4}"#);
        assert_eq!(sf_model_fix_and_check(dwell, point.as_ptr(), &mut admitted), SfStatus::Ok);
        assert!(!admitted);
        let lin = model(
            r#"{"kind":"linearized","A":[["1","-1"]],"b":["-2"],"sigma":2,"T":"4","N":4}"#,
        );
        assert_eq!(sf_model_fix_and_check(lin, point.as_ptr(), &mut admitted), SfStatus::Ok);
        assert!(admitted);
        sf_model_free(lin);
        sf_model_free(dwell);
    }
}

#[test]
fn grid_factor_and_incompatible_grid() {
    unsafe {
        let mut factor = 0;
        let status = sf_dwell_grid_factor(c("2").as_ptr(), c("1").as_ptr(), c("4").as_ptr(), &mut factor);
        assert_eq!(status, SfStatus::Ok);
        assert_eq!(factor, 4);
        assert!(sf_last_error_message().is_null());

        let mut m = ptr::null_mut();
        let bad = c(r#"{"kind":"dwell","L":"2","l":"1","T":"4","N":3}"#);
        assert_eq!(sf_model_from_instance_json(bad.as_ptr(), &mut m), SfStatus::InvalidInput);
        assert!(m.is_null());
        assert!(last_error().contains("multiple of 4"));
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(sf_model_from_instance_json(ptr::null(), &mut m), SfStatus::NullPointer);
        assert!(last_error().contains("json"));
        assert_eq!(sf_model_from_instance_json(c("{").as_ptr(), &mut m), SfStatus::InvalidInput);
        assert_eq!(sf_model_from_lp_text(c("nonsense here").as_ptr(), &mut m), SfStatus::InvalidInput);

        let mut text = ptr::null_mut();
        assert_eq!(sf_model_to_lp_text(ptr::null(), &mut text), SfStatus::NullPointer);

        let infeasible = c("minimize\n  obj: 1*x + 0\nvariables\n  x 0 5\nsubject to\n  c1: 1*x >= 2\n  c2: 1*x <= 1\nend\n");
        assert_eq!(sf_model_from_lp_text(infeasible.as_ptr(), &mut m), SfStatus::Ok);
        let mut sol = ptr::null_mut();
        assert_eq!(sf_model_solve(m, &mut sol), SfStatus::Ok);
        let mut status = SfLpStatus::Optimal;
        assert_eq!(sf_solution_status(sol, &mut status), SfStatus::Ok);
        assert_eq!(status, SfLpStatus::Infeasible);
        let mut value = ptr::null_mut();
        assert_eq!(sf_solution_value(sol, &mut value), SfStatus::InvalidInput);
        assert!(value.is_null());
        sf_solution_free(sol);
        sf_model_free(m);

        sf_model_free(ptr::null_mut());
        sf_solution_free(ptr::null_mut());
        sf_string_free(ptr::null_mut());
    }
}
