use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use domino_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = domino_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn generate(family: &str, params: &str) -> *mut DominoSequence {
    let mut seq = ptr::null_mut();
    let status = unsafe { domino_sequence_generate(cstr(family).as_ptr(), cstr(params).as_ptr(), &mut seq) };
    assert_eq!(status, DominoStatus::Ok);
    seq
}

#[test]
fn rotor_optima_through_the_c_api() {
    let seq = generate("rotor", "delta=4");
    assert_eq!(unsafe { domino_sequence_len(seq) }, 5);
    let mut size = 0usize;
    let st = unsafe { domino_solve(seq, DominoVariant::Tds, DominoBaseline::Incremental, 0, &mut size) };
    assert_eq!(st, DominoStatus::Ok);
    assert_eq!(size, 4);
    let st = unsafe { domino_solve(seq, DominoVariant::Cds, DominoBaseline::Offline, 0, &mut size) };
    assert_eq!(st, DominoStatus::Ok);
    assert_eq!(size, 1);
    unsafe { domino_sequence_free(seq) };
}

#[test]
fn parse_serialize_round_trip() {
    let text = cstr("n 4\n\n1\n2\n3\n");
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { domino_sequence_parse(text.as_ptr(), &mut seq) }, DominoStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { domino_sequence_serialize(seq, &mut out) }, DominoStatus::Ok);
    let rendered = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    let mut again = ptr::null_mut();
    let rendered_c = cstr(&rendered);
    assert_eq!(unsafe { domino_sequence_parse(rendered_c.as_ptr(), &mut again) }, DominoStatus::Ok);
    assert_eq!(unsafe { domino_sequence_len(again) }, 4);
    unsafe {
        domino_string_free(out);
        domino_sequence_free(seq);
        domino_sequence_free(again);
    }
}

#[test]
fn online_chain_copies_out() {
    let counts = [0u32, 1, 1, 1, 1, 1];
    let nbrs = [1u32, 2, 3, 4, 5];
    let mut seq = ptr::null_mut();
    let st = unsafe { domino_sequence_from_arrivals(6, counts.as_ptr(), nbrs.as_ptr(), nbrs.len(), &mut seq) };
    assert_eq!(st, DominoStatus::Ok);
    let mut chain = ptr::null_mut();
    let alg = cstr("parent");
    assert_eq!(unsafe { domino_run_online(seq, alg.as_ptr(), DominoVariant::Ds, &mut chain) }, DominoStatus::Ok);
    let len = unsafe { domino_chain_len(chain) };
    assert_eq!(len, 5);
    let (mut vs, mut ts) = (vec![0u32; len], vec![0u32; len]);
    let st = unsafe { domino_chain_copy(chain, vs.as_mut_ptr(), ts.as_mut_ptr(), 2) };
    assert_eq!(st, DominoStatus::BufferTooSmall);
    let st = unsafe { domino_chain_copy(chain, vs.as_mut_ptr(), ts.as_mut_ptr(), len) };
    assert_eq!(st, DominoStatus::Ok);
    assert_eq!(vs, vec![1, 2, 3, 4, 5]);
    assert_eq!(ts, vec![1, 3, 4, 5, 6]);
    unsafe {
        domino_chain_free(chain);
        domino_sequence_free(seq);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut seq = ptr::null_mut();
    let st = unsafe { domino_sequence_generate(cstr("rotor").as_ptr(), cstr("delta=3").as_ptr(), &mut seq) };
    assert_eq!(st, DominoStatus::Parameter);
    assert!(last_error().contains("rotor"));
    assert!(seq.is_null());

    let st = unsafe { domino_sequence_parse(ptr::null(), &mut seq) };
    assert_eq!(st, DominoStatus::NullPointer);

    let bad = cstr("n 2\n\n3\n");
    assert_eq!(unsafe { domino_sequence_parse(bad.as_ptr(), &mut seq) }, DominoStatus::InvalidSequence);

    let big = generate("path", "n=30");
    let mut size = 0;
    let st = unsafe { domino_solve(big, DominoVariant::Ds, DominoBaseline::Incremental, 0, &mut size) };
    assert_eq!(st, DominoStatus::CapExceeded);
    assert!(last_error().contains("cap"));

    let mut chain = ptr::null_mut();
    let st = unsafe { domino_run_online(big, cstr("greedy").as_ptr(), DominoVariant::Ds, &mut chain) };
    assert_eq!(st, DominoStatus::Unknown);
    unsafe { domino_sequence_free(big) };

    let mut size = 0usize;
    let st = unsafe { domino_solve(ptr::null(), DominoVariant::Ds, DominoBaseline::Offline, 0, &mut size) };
    assert_eq!(st, DominoStatus::NullPointer);
}

#[test]
fn verify_suite_counts_failures() {
    let mut failures = usize::MAX;
    let st = unsafe { domino_verify_suite(cstr("ids-uniqueness").as_ptr(), 1, 10, &mut failures) };
    assert_eq!(st, DominoStatus::Ok);
    assert_eq!(failures, 0);
    let st = unsafe { domino_verify_suite(cstr("nope").as_ptr(), 1, 10, &mut failures) };
    assert_eq!(st, DominoStatus::Unknown);
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(domino_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/domino.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        "#include \"domino.h\"\nint main(void) { DominoSequence *s = 0; \
         return domino_sequence_generate(\"path\", \"n=4\", &s) == DOMINO_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("domino-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
