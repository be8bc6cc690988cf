use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use torloc_ffi::*;

fn fixture(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error() -> String {
    let p = torloc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

/// Takes ownership of a returned string.
fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { torloc_string_free(s) };
    out
}

fn load(name: &str) -> *mut TorlocFan {
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { torloc_fan_from_json(fixture(name).as_ptr(), &mut fan) }, TorlocStatus::Ok);
    assert!(torloc_last_error().is_null());
    fan
}

#[test]
fn fan_queries() {
    let fan = load("cube.json");
    let (mut dim, mut rays, mut cones, mut pic) = (0, 0, 0, 0);
    unsafe {
        assert_eq!(torloc_fan_ambient_dim(fan, &mut dim), TorlocStatus::Ok);
        assert_eq!(torloc_fan_num_rays(fan, &mut rays), TorlocStatus::Ok);
        assert_eq!(torloc_fan_num_maximal_cones(fan, &mut cones), TorlocStatus::Ok);
        assert_eq!(torloc_picard_rank(fan, &mut pic), TorlocStatus::Ok);
    }
    assert_eq!((dim, rays, cones, pic), (3, 8, 6, 1));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { torloc_multiplicity(fan, 0, &mut s) }, TorlocStatus::Ok);
    assert_eq!(take(s), "4a/((a-b)(a+b)(a-c)(a+c))");
    assert_eq!(unsafe { torloc_ranks(fan, 3, &mut s) }, TorlocStatus::Ok);
    let expected =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/cube.ranks.txt"));
    assert_eq!(take(s), expected.unwrap());
    assert_eq!(unsafe { torloc_fan_to_json(fan, &mut s) }, TorlocStatus::Ok);
    assert_eq!(take(s), fixture("cube.json").to_str().unwrap());
    unsafe { torloc_fan_free(fan) };
}

#[test]
fn image_index_and_chern_numbers() {
    let z2 = load("mod_z2.json");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { torloc_image_index(z2, 2, &mut s) }, TorlocStatus::Ok);
    assert_eq!(take(s), "2");
    unsafe { torloc_fan_free(z2) };

    let cube = load("cube.json");
    let bundle = fixture("cube_bundle.json");
    for (lambda, want) in [("111", "64"), ("21", "32"), ("3", "0")] {
        let lambda = CString::new(lambda).unwrap();
        assert_eq!(unsafe { torloc_chern_number(cube, bundle.as_ptr(), lambda.as_ptr(), &mut s) }, TorlocStatus::Ok);
        assert_eq!(take(s), want);
    }
    unsafe { torloc_fan_free(cube) };
}

#[test]
fn mixed_volumes() {
    let mut s = ptr::null_mut();
    for (name, want) in [("segments.json", "1"), ("squares.json", "2"), ("triangles.json", "1")] {
        assert_eq!(unsafe { torloc_mixed_volume(fixture(name).as_ptr(), &mut s) }, TorlocStatus::Ok);
        assert_eq!(take(s), want, "{name}");
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut fan = ptr::null_mut();
    let bad = CString::new("{\"rank\": 2,\n \"maximal_cones\": [[[1, 0], [0, 1]], [[1, 0], [1, 1]]]}").unwrap();
    assert_eq!(unsafe { torloc_fan_from_json(bad.as_ptr(), &mut fan) }, TorlocStatus::Validation);
    assert!(fan.is_null());
    assert!(!last_error().is_empty());

    let broken = CString::new("{\"rank\": 2,").unwrap();
    assert_eq!(unsafe { torloc_fan_from_json(broken.as_ptr(), &mut fan) }, TorlocStatus::Validation);
    assert!(last_error().contains("line 1"), "{}", last_error());

    assert_eq!(unsafe { torloc_fan_from_json(ptr::null(), &mut fan) }, TorlocStatus::NullArgument);
    assert_eq!(last_error(), "null argument: json");
    let mut n = 0;
    assert_eq!(unsafe { torloc_fan_num_rays(ptr::null(), &mut n) }, TorlocStatus::NullArgument);

    let cube = load("cube.json");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { torloc_multiplicity(cube, 6, &mut s) }, TorlocStatus::Validation);
    assert!(s.is_null());
    assert_eq!(unsafe { torloc_multiplicity(cube, 0, ptr::null_mut()) }, TorlocStatus::NullArgument);

    let bundle = CString::new(
        "{\"rank\": 2, \"filtrations\": {\"0\": [[0, [[1, 0]]], [4, []]], \"1\": [[0, [[1, 0]]], [1, [[1, 1]]], [4, []]]}}",
    )
    .unwrap();
    let lambda = CString::new("111").unwrap();
    let status = unsafe { torloc_chern_number(cube, bundle.as_ptr(), lambda.as_ptr(), &mut s) };
    assert!(matches!(status, TorlocStatus::Validation | TorlocStatus::Incompatible), "{status:?}");
    unsafe { torloc_fan_free(cube) };

    unsafe {
        torloc_fan_free(ptr::null_mut());
        torloc_string_free(ptr::null_mut());
    }
}
