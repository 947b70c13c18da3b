//! One line per acceptance criterion; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use qgreen_core::presentation::{cartan_matrix, green_presentation, RankParams};
use qgreen_core::verify::{self, FockConvention, Identity, SymbolicConfig, VStatus, VerificationReport};

const RANKS: [(usize, usize); 3] = [(1, 1), (1, 2), (2, 1)];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn rank(m: usize, n: usize) -> RankParams {
    RankParams::new(m, n).unwrap()
}

fn summary(rep: &VerificationReport) -> String {
    format!(
        "{}v/{}f/{}i",
        rep.count(VStatus::Verified),
        rep.count(VStatus::Failed),
        rep.count(VStatus::Inconclusive)
    )
}

fn bad_tags(rep: &VerificationReport) -> Vec<String> {
    rep.records.iter().filter(|r| r.status != VStatus::Verified).map(|r| r.tag.clone()).collect()
}

fn c1() -> Outcome {
    let t = Instant::now();
    let rep = verify::check_identities().unwrap();
    let dt = t.elapsed();
    let cases_ok = Identity::ALL.iter().all(|id| {
        let n = rep.records.iter().filter(|r| r.tag.starts_with(&format!("{}[", id.name()))).count();
        n == id.parity_cases().len() && n <= 8
    });
    Outcome {
        pass: rep.all_verified() && cases_ok && dt < Duration::from_secs(5),
        detail: format!("{} cases {} in {:.2?}, failing {:?}", rep.records.len(), summary(&rep), dt, bad_tags(&rep)),
    }
}

const EQ7: [[i64; 8]; 8] = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 0, 0, 1, -1],
];

fn c2() -> Outcome {
    let t = Instant::now();
    let a = cartan_matrix(rank(4, 4));
    let exact = a.iter().map(|r| r.as_slice()).eq(EQ7.iter().map(|r| r.as_slice()));
    let mut props = true;
    for m in 1..=6 {
        for n in 1..=6 {
            let r = rank(m, n);
            let a = cartan_matrix(r);
            let nn = r.N();
            for i in 0..nn {
                for j in 0..nn {
                    props &= a[i][j] == a[j][i];
                    let s: i64 = (i..nn).flat_map(|s| (j..nn).map(move |t| (s, t))).map(|(s, t)| a[s][t]).sum();
                    let want = if i == j { -r.sgn(i + 1) } else { 0 };
                    props &= s == want;
                }
            }
        }
    }
    let dt = t.elapsed();
    Outcome {
        pass: exact && props && dt < Duration::from_secs(1),
        detail: format!("(4,4) matches: {exact}, symmetry and block sums for m,n <= 6: {props}, {dt:.2?}"),
    }
}

fn symbolic(f: fn(RankParams, SymbolicConfig) -> qgreen_core::Result<VerificationReport>, need: &[&str]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, n) in RANKS {
        let t = Instant::now();
        let rep = f(rank(m, n), SymbolicConfig::default()).unwrap();
        let dt = t.elapsed();
        let missing: Vec<&str> = need
            .iter()
            .copied()
            .filter(|g| !rep.records.iter().any(|r| r.tag.split('[').next() == Some(*g)))
            .collect();
        pass &= rep.count(VStatus::Failed) == 0 && rep.count(VStatus::Inconclusive) == 0;
        pass &= missing.is_empty() && dt < Duration::from_secs(600);
        parts.push(format!("({m},{n}) {} {dt:.2?}{}", summary(&rep), if missing.is_empty() {
            String::new()
        } else {
            format!(" missing {missing:?}")
        }));
        let bad = bad_tags(&rep);
        if !bad.is_empty() {
            parts.push(format!("not verified {bad:?}"));
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn c3() -> Outcome {
    symbolic(
        verify::check_green_from_chevalley,
        &["16", "17", "18b", "18c", "19b", "19c", "23a", "23b", "23c", "30a", "32b", "30c", "30d", "30e"],
    )
}

fn c4() -> Outcome {
    let mut o = symbolic(verify::check_chevalley_from_green, &["12a", "12b", "8c", "9a", "9d", "10a", "10d", "41"]);
    let rep = verify::check_chevalley_from_green(rank(2, 1), SymbolicConfig::default()).unwrap();
    let lemmas = ["36[i=1]", "39", "9b[i=1,j=2]", "9c"].iter().all(|t| rep.record(t).is_some_and(|r| r.status == VStatus::Verified));
    o.pass &= lemmas;
    o.detail.push_str(&format!("; (2,1) lemmas 36, 39 and 9b/9c present and verified: {lemmas}"));
    o
}

fn c5() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (m, n) in RANKS {
        let rep = verify::check_round_trip(rank(m, n), SymbolicConfig::default()).unwrap();
        let there: Vec<_> = rep.records.iter().filter(|r| r.tag.contains("->green->")).collect();
        let ok = there.len() == 4 * rank(m, n).N() && there.iter().all(|r| r.status == VStatus::Verified);
        pass &= ok && rep.all_verified();
        parts.push(format!("({m},{n}) {} generators {}", there.len(), summary(&rep)));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn c6() -> Outcome {
    let mut pass = true;
    let mut total = 0;
    let mut bad = Vec::new();
    for m in 1..=3 {
        for n in 1..=3 {
            let rep = verify::check_classical_limit(rank(m, n)).unwrap();
            total += rep.records.len();
            if !rep.all_verified() {
                pass = false;
                bad.push(format!("({m},{n}) {:?}", bad_tags(&rep)));
            }
        }
    }
    Outcome { pass, detail: format!("{total} bodies matched for m,n <= 3 {}", bad.join(" ")) }
}

fn c7() -> Outcome {
    let r = rank(1, 1);
    let vs = [1.1, 1.01, 1.001];
    let mut classical = Vec::new();
    let mut green = Vec::new();
    for v in vs {
        let rep = verify::build_fock_rep(r, 8, v, FockConvention::QKlein).unwrap();
        classical.push(verify::classical_residual(&rep).unwrap());
        green.push(verify::check_rep(&rep, &green_presentation(r)).unwrap().max_residual().unwrap());
    }
    let literal = verify::build_fock_rep(r, 8, 1.1, FockConvention::Literal).unwrap();
    let literal_green = verify::check_rep(&literal, &green_presentation(r)).unwrap().max_residual().unwrap();
    let monotone = classical.windows(2).all(|w| w[1] < w[0]);
    let small = classical[2] < 1e-4;
    let green_ok = green.iter().all(|&g| g < 1e-10);
    Outcome {
        pass: monotone && small && green_ok,
        detail: format!(
            "classical residuals {:.4e} {:.4e} {:.4e} (monotone {monotone}, final < 1e-4 {small}); \
             green residuals {:.1e} {:.1e} {:.1e} with q-Klein convention (< 1e-10 {green_ok}); \
             literal convention green residual {:.3} at v=1.1",
            classical[0], classical[1], classical[2], green[0], green[1], green[2], literal_green
        ),
    }
}

fn c8() -> Outcome {
    let t = Instant::now();
    let results = [
        ("field axioms", common::field_axioms(1000)),
        ("associativity", common::associativity(1000)),
        ("bracket/parity", common::bracket_parity(1000)),
        ("reduction idempotence and replay", common::reduction_properties(1000)),
    ];
    let dt = t.elapsed();
    let failures: Vec<String> = results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    Outcome {
        pass: failures.is_empty() && dt < Duration::from_secs(60),
        detail: format!("4 properties x 1000 cases in {dt:.2?} {}", failures.join("; ")),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("identity suite", c1),
        ("cartan matrix", c2),
        ("green from chevalley", c3),
        ("chevalley from green", c4),
        ("round trip", c5),
        ("classical limit, symbolic", c6),
        ("classical limit, numeric", c7),
        ("property tests", c8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {} {:<28} {}  {}", k + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
