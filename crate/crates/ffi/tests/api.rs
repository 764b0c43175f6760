use std::ffi::{CStr, CString};
use std::ptr;

use lambek_ffi::*;

const APPEND: &str = "type llist[a] = +{nil : 1, cons : a * llist[a]}\n\
    rec def append : all a. llist[a] ->> llist[a] ->> llist[a] =\n\
      \\l. \\k. match l {nil(u) => match u (() => k), cons(p) => match p ((x, xs) => cons((x, append [a] xs k)))}\n\
    def two : llist[1] = cons(((), cons(((), nil(())))))\n\
    def four : llist[1] = append [1] two two";

fn last_error() -> String {
    let p = lb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(src: &str) -> *mut LbProgram {
    let src = CString::new(src).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { lb_program_parse(src.as_ptr(), &mut p) },
        LbStatus::Ok
    );
    assert!(!p.is_null());
    p
}

#[test]
fn parse_check_eval_free() {
    let p = parse(APPEND);
    unsafe {
        assert_eq!(lb_program_declaration_count(p), 3);
        let mut rejected = 99;
        assert_eq!(
            lb_program_check(p, LbMode::Ordered, &mut rejected),
            LbStatus::Ok
        );
        assert_eq!(rejected, 0);
        assert!(lb_last_error().is_null());

        let name = CString::new("four").unwrap();
        let mut value = ptr::null_mut();
        assert_eq!(
            lb_program_eval(p, name.as_ptr(), LbMode::Ordered, 1_000_000, &mut value),
            LbStatus::Ok
        );
        let shown = CStr::from_ptr(value).to_str().unwrap().to_owned();
        lb_string_free(value);
        assert_eq!(shown.matches("cons").count(), 4);

        assert_eq!(
            lb_program_eval(p, name.as_ptr(), LbMode::Ordered, 2, &mut value),
            LbStatus::OutOfFuel
        );
        assert!(value.is_null());
        let missing = CString::new("five").unwrap();
        assert_eq!(
            lb_program_eval(p, missing.as_ptr(), LbMode::Ordered, 10, &mut value),
            LbStatus::UnknownDeclaration
        );
        assert!(last_error().contains("five"));
        lb_program_free(p);
    }
}

#[test]
fn rejections_are_reported() {
    let p = parse("def swap : all a. a ->> a ->> a * a = \\x. \\y. (y, x)");
    unsafe {
        let mut rejected = 0;
        assert_eq!(
            lb_program_check(p, LbMode::Ordered, &mut rejected),
            LbStatus::Rejected
        );
        assert_eq!(rejected, 1);
        assert!(last_error().contains("swap"));
        assert_eq!(
            lb_program_check(p, LbMode::Linear, &mut rejected),
            LbStatus::Ok
        );
        assert_eq!(rejected, 0);
        lb_program_free(p);
    }
}

#[test]
fn parse_errors_and_null_arguments() {
    let bad = CString::new("def x : 1 = (").unwrap();
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(lb_program_parse(bad.as_ptr(), &mut p), LbStatus::ParseError);
        assert!(p.is_null());
        assert!(last_error().contains("1:"));
        assert_eq!(
            lb_program_parse(ptr::null(), &mut p),
            LbStatus::NullArgument
        );
        assert_eq!(
            lb_program_parse(bad.as_ptr(), ptr::null_mut()),
            LbStatus::NullArgument
        );
        let mut n = 0;
        assert_eq!(
            lb_program_check(ptr::null(), LbMode::Ordered, &mut n),
            LbStatus::NullArgument
        );
        assert_eq!(lb_program_declaration_count(ptr::null()), 0);
        lb_program_free(ptr::null_mut());
        lb_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_refused() {
    let bytes = CString::new(vec![0xff, 0xfe]).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { lb_program_parse(bytes.as_ptr(), &mut p) },
        LbStatus::InvalidUtf8
    );
}

#[test]
fn counting() {
    let ty = CString::new("a ->> (a ->> a * a)").unwrap();
    let (mut n, mut truncated) = (0usize, true);
    unsafe {
        for (mode, want) in [
            (LbMode::Ordered, 1),
            (LbMode::Linear, 2),
            (LbMode::Unrestricted, 4),
        ] {
            assert_eq!(
                lb_count_inhabitants(ty.as_ptr(), mode, &mut n, &mut truncated),
                LbStatus::Ok
            );
            assert_eq!((n, truncated), (want, false));
        }
        let named = CString::new("llist[a]").unwrap();
        assert_eq!(
            lb_count_inhabitants(named.as_ptr(), LbMode::Ordered, &mut n, &mut truncated),
            LbStatus::ParseError
        );
        let lolli = CString::new("a -o a").unwrap();
        assert_eq!(
            lb_count_inhabitants(lolli.as_ptr(), LbMode::Ordered, &mut n, &mut truncated),
            LbStatus::Unsupported
        );
    }
}
