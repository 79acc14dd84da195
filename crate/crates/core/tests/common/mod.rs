//! Shared fixtures: the hand-worked regressions and a seeded random corpus.
#![allow(dead_code)]

pub mod oracles;

use std::collections::BTreeMap;

use folnewt::foliated::{load_space, load_space_json, Atlas, SpaceDocument, Style};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub name: String,
    pub doc: SpaceDocument,
    pub atlas: Atlas,
}

pub const DATA: [(&str, &str); 7] = [
    ("worked-example", include_str!("../../data/worked-example.json")),
    ("degenerate", include_str!("../../data/degenerate.json")),
    ("cusp", include_str!("../../data/cusp.json")),
    ("regular", include_str!("../../data/regular.json")),
    ("regular-free", include_str!("../../data/regular-free.json")),
    ("tangent", include_str!("../../data/tangent.json")),
    ("holomorphic", include_str!("../../data/holomorphic.json")),
];

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(format!("{name}.json"))
}

pub fn instance_from_json(name: &str, json: &str) -> Instance {
    Instance {
        name: name.to_string(),
        doc: SpaceDocument::from_json(json).unwrap(),
        atlas: load_space_json(json).unwrap(),
    }
}

/// The six hand-worked examples.
pub fn regressions() -> Vec<Instance> {
    DATA.iter()
        .filter(|(n, _)| *n != "holomorphic")
        .map(|(n, j)| instance_from_json(n, j))
        .collect()
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[String], max_terms: usize) -> String {
    let nterms = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut c: i64 = rng.gen_range(1..=3);
        if rng.gen_bool(0.4) {
            c = -c;
        }
        let mut budget = rng.gen_range(0..=4u32);
        let mut factors = vec![c.to_string()];
        let mut order: Vec<&String> = vars.iter().collect();
        order.shuffle(rng);
        for v in order {
            if budget == 0 {
                break;
            }
            let k = rng.gen_range(0..=budget);
            budget -= k;
            match k {
                0 => {}
                1 => factors.push(v.clone()),
                _ => factors.push(format!("{v}^{k}")),
            }
        }
        terms.push(factors.join("*"));
    }
    terms.join(" + ")
}

/// Random documents: 2 or 3 divisor variables, at most one free variable,
/// sparse coefficients of degree at most 4. Documents the loader rejects
/// (zero form, monomial content, common factor) are redrawn.
pub fn random_document(seed: u64) -> SpaceDocument {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let nd = rng.gen_range(2..=3);
        let nf = rng.gen_range(0..=1);
        let divisor: Vec<String> = (1..=nd).map(|i| format!("x{i}")).collect();
        let free: Vec<String> = (0..nf).map(|_| "y".to_string()).collect();
        let all: Vec<String> = divisor.iter().chain(&free).cloned().collect();
        let mut form = BTreeMap::new();
        for v in &all {
            let p = if rng.gen_bool(0.15) {
                "0".to_string()
            } else {
                random_poly(&mut rng, &all, 2)
            };
            form.insert(v.clone(), p);
        }
        let doc = SpaceDocument {
            divisor,
            free,
            form,
            style: Style::Logarithmic,
        };
        if load_space(&doc).is_ok() {
            return doc;
        }
    }
}

pub fn corpus(n: usize) -> Vec<Instance> {
    (0..n as u64)
        .map(|seed| {
            let doc = random_document(seed);
            let atlas = load_space(&doc).unwrap();
            Instance {
                name: format!("random-{seed}"),
                doc,
                atlas,
            }
        })
        .collect()
}

pub fn describe(doc: &SpaceDocument) -> String {
    let parts: Vec<String> = doc.form.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("D={:?} free={:?} {{{}}}", doc.divisor, doc.free, parts.join(", "))
}
