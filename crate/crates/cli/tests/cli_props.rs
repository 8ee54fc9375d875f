mod common;

use common::{bundle, bundle_noise, class, class_noise};
use proptest::prelude::*;
use seshadri_cli::{parse_bundle, parse_class, run, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN};

fn seshadri(args: &[&str]) -> seshadri_cli::Outcome {
    run(std::iter::once("seshadri").chain(args.iter().copied()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn classes_round_trip(c in class()) {
        prop_assert_eq!(parse_class(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn bundles_round_trip(b in bundle()) {
        prop_assert_eq!(parse_bundle(&b.to_string()).unwrap(), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn class_exit_codes_follow_the_parser(text in class_noise(), g in 2u32..=9) {
        let out = seshadri(&["cxc", "certify", "--g", &g.to_string(), "--class", &text]);
        match parse_class(&text) {
            Err(e) => {
                prop_assert_eq!(out.code, EXIT_INPUT);
                prop_assert!(out.stderr.contains(&format!("column {}", e.column + 1)), "{}", out.stderr);
            }
            Ok(_) => prop_assert!(out.code == EXIT_OK || out.code == EXIT_UNKNOWN, "{:?}", out),
        }
    }

    #[test]
    fn bundle_exit_codes_follow_the_parser(text in bundle_noise()) {
        let out = seshadri(&["curve", "hn", "--pieces", &text]);
        match parse_bundle(&text) {
            Err(e) => {
                prop_assert_eq!(out.code, EXIT_INPUT);
                prop_assert!(out.stderr.contains(&format!("column {}", e.column + 1)), "{}", out.stderr);
            }
            Ok(_) => prop_assert_eq!(out.code, EXIT_OK),
        }
    }

    #[test]
    fn malformed_flags_exit_one(flag in "--[a-z]{1,8}", value in "[a-z0-9/-]{0,6}", sub in prop::sample::select(vec!["curve hn", "cxc certify", "jets hacon", "seshadri toric"])) {
        prop_assume!(!["--help", "--version", "--lines"].contains(&flag.as_str()));
        let mut args: Vec<&str> = sub.split(' ').collect();
        args.push(&flag);
        args.push(&value);
        let out = seshadri(&args);
        prop_assert_eq!(out.code, EXIT_INPUT, "{:?}", out);
    }

    #[test]
    fn bad_numbers_exit_one(text in "[0-9]{0,3}[a-z/.]{1,3}[0-9]{0,2}") {
        prop_assume!(seshadri_core::exact_num::parse_rational(&text).is_err());
        prop_assert_eq!(seshadri(&["bundle", "twist", "--pieces", "1:1", "--by", &text]).code, EXIT_INPUT);
        prop_assert_eq!(seshadri(&["cxc", "slope", "--g", "3", "--a", &text, "--n", "5"]).code, EXIT_INPUT);
        prop_assert_eq!(seshadri(&["jets", "hacon", "--n", "2", "--r", "2", "--beta", &text]).code, EXIT_INPUT);
    }
}
