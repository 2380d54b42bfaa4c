//! Built-in benchmark test cases and known optima of the Augerat P instances.

use std::collections::BTreeMap;

/// The twelve instances, in canonical order.
pub const INSTANCES: [&str; 12] = [
    "P-n16-k8",
    "P-n19-k2",
    "P-n20-k2",
    "P-n21-k2",
    "P-n22-k2",
    "P-n23-k8",
    "P-n50-k7",
    "P-n50-k8",
    "P-n55-k7",
    "P-n55-k15",
    "P-n60-k10",
    "P-n60-k15",
];

/// Instances with fewer than 25 nodes; the remaining six form the large family.
pub const SMALL_FAMILY: [&str; 6] = ["P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestCase {
    pub id: &'static str,
    pub instances: &'static [&'static str],
}

pub const TEST_CASES: [TestCase; 11] = [
    TestCase {
        id: "TC_4_1",
        instances: &["P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2"],
    },
    TestCase {
        id: "TC_4_2",
        instances: &["P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8"],
    },
    TestCase {
        id: "TC_4_3",
        instances: &["P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15"],
    },
    TestCase {
        id: "TC_4_4",
        instances: &["P-n55-k7", "P-n55-k15", "P-n60-k10", "P-n60-k15"],
    },
    TestCase {
        id: "TC_6_1",
        instances: &["P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n50-k7", "P-n50-k8", "P-n55-k7"],
    },
    TestCase {
        id: "TC_6_2",
        instances: &[
            "P-n21-k2",
            "P-n22-k2",
            "P-n23-k8",
            "P-n55-k15",
            "P-n60-k10",
            "P-n60-k15",
        ],
    },
    TestCase {
        id: "TC_6_3",
        instances: &[
            "P-n16-k8",
            "P-n19-k2",
            "P-n20-k2",
            "P-n55-k15",
            "P-n60-k10",
            "P-n60-k15",
        ],
    },
    TestCase {
        id: "TC_6_4",
        instances: &["P-n21-k2", "P-n22-k2", "P-n23-k8", "P-n50-k7", "P-n50-k8", "P-n55-k7"],
    },
    TestCase {
        id: "TC_6_5",
        instances: &["P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8"],
    },
    TestCase {
        id: "TC_6_6",
        instances: &[
            "P-n50-k7",
            "P-n50-k8",
            "P-n55-k7",
            "P-n55-k15",
            "P-n60-k10",
            "P-n60-k15",
        ],
    },
    TestCase {
        id: "TC_12",
        instances: &INSTANCES,
    },
];

pub fn test_case(id: &str) -> Option<&'static TestCase> {
    TEST_CASES.iter().find(|tc| tc.id == id)
}

pub fn is_small_family(instance: &str) -> bool {
    SMALL_FAMILY.contains(&instance)
}

const OPTIMA_CSV: &str = include_str!("../../data/optima.csv");

/// Known optimal costs, used for deviation reporting only.
pub fn known_optima() -> BTreeMap<String, u64> {
    parse_optima(OPTIMA_CSV).expect("bundled optima table is well formed")
}

/// Reads an `instance,optimum` CSV.
pub fn parse_optima(text: &str) -> Result<BTreeMap<String, u64>, csv::Error> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = BTreeMap::new();
    for row in reader.deserialize::<(String, u64)>() {
        let (name, opt) = row?;
        out.insert(name, opt);
    }
    Ok(out)
}
