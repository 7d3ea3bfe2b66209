//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use macdlab::almost_sym::AlmostSym;
use macdlab::cli_verify::{run_suite, Report, Suite, SuiteConfig};
use macdlab::combinatorics::{Filling, Partition, RowOneFactor};
use macdlab::qt_field::RatQT;
use macdlab::stable_limit::{e_tilde_pair, stable_weight, StableIndex};
use macdlab::symfunc::Basis;

type Outcome = Result<String, String>;

fn suite(s: Suite, cfg: SuiteConfig) -> Vec<Report> {
    run_suite(s, &cfg).unwrap_or_else(|e| panic!("{}: {e}", s.name()))
}

fn summarize<'a>(reports: impl IntoIterator<Item = &'a Report>) -> Outcome {
    let reports: Vec<&Report> = reports.into_iter().collect();
    if reports.is_empty() {
        return Err("no instances ran".into());
    }
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(r.to_string()),
        None => {
            let margin = reports.iter().filter_map(|r| r.min_valuation_margin).min();
            Ok(match margin {
                Some(m) => format!("{} instances, min margin {m}", reports.len()),
                None => format!("{} instances", reports.len()),
            })
        }
    }
}

fn worked_examples() -> Outcome {
    let idx = |m: &[usize], l: &[usize]| StableIndex::new(m.to_vec(), l.to_vec()).unwrap();
    let hl = |l: &[usize], k: usize| AlmostSym::tail_sym(&Basis::HallLittlewood.element(&Partition(l.to_vec())), k);
    let c = &RatQT::qt(-1, 0) / &(RatQT::one() - RatQT::qt(-1, 1));
    let x = |f: AlmostSym, i: usize| f.act_x(i).unwrap();

    let mut a2 = hl(&[2], 0);
    a2.add_assign_scaled(&hl(&[1, 1], 0), &c);
    let mut e2 = AlmostSym::monomial(vec![2]);
    e2.add_assign_scaled(&x(hl(&[1], 1), 1), &c);
    let cases = [
        (idx(&[], &[2]), a2, vec![]),
        (idx(&[2], &[]), e2, vec![RatQT::qt(2, 1)]),
        (idx(&[1, 1, 1], &[]), AlmostSym::monomial(vec![1, 1, 1]), vec![RatQT::qt(1, 3), RatQT::qt(1, 2), RatQT::qt(1, 1)]),
        (idx(&[1, 1], &[1]), x(x(hl(&[1], 2), 1), 2), vec![RatQT::qt(1, 3), RatQT::qt(1, 2)]),
        (idx(&[1], &[1, 1]), x(hl(&[1, 1], 1), 1), vec![RatQT::qt(1, 3)]),
    ];
    for (i, want, w) in &cases {
        if *e_tilde_pair(i) != *want {
            return Err(format!("E~{i} = {}", e_tilde_pair(i).display_in(Basis::HallLittlewood)));
        }
        if stable_weight(i).0 != *w {
            return Err(format!("weight of {i} is {}", stable_weight(i)));
        }
    }
    Ok(format!("{} expansions and weights", cases.len()))
}

fn hhl_statistics() -> Outcome {
    let f = Filling::new(vec![3, 2, 0, 1, 0, 0], vec![vec![1, 4, 6], vec![2, 1], vec![], vec![3], vec![], vec![]]);
    if !f.is_nonattacking() {
        return Err("filling is attacking".into());
    }
    let st = f.stats();
    let got = (st.maj, st.inv_count, st.inv, st.coinv);
    if got != (3, 21, 14, 1) {
        return Err(format!("(maj, |Inv|, inv, coinv) = {got:?}"));
    }
    if f.label_counts(6) != [2, 1, 1, 1, 0, 1] {
        return Err(format!("monomial exponents {:?}", f.label_counts(6)));
    }
    let omt = RatQT::one() - RatQT::t();
    let g = |a, b| &omt / &(RatQT::one() - RatQT::qt(a, b));
    let want = RatQT::qt(-3, 1) * g(-1, 3) * g(-1, 2) * g(-2, 3) * g(-1, 2);
    let w = f.weight(RowOneFactor::Finite);
    if w != want {
        return Err(format!("contribution {w}"));
    }
    Ok("maj 3, |Inv| 21, inv 14, coinv 1".into())
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: Box<dyn Fn() -> Outcome>,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let cfg = SuiteConfig::default;
    let with_size = |s| SuiteConfig { max_size: Some(s), ..SuiteConfig::default() };
    let oracle = std::sync::Arc::new(std::sync::OnceLock::<Vec<Report>>::new());
    let (o1, o2) = (oracle.clone(), oracle.clone());
    let criteria: Vec<Criterion> = vec![
        Criterion { name: "worked-example reproduction", budget: secs(10), run: Box::new(worked_examples) },
        Criterion { name: "HHL example statistics", budget: secs(1), run: Box::new(hhl_statistics) },
        Criterion {
            name: "triple-oracle equivalence",
            budget: secs(600),
            run: Box::new(move || {
                let rs = o1.get_or_init(|| suite(Suite::HhlOracle, with_size(4)));
                summarize(rs.iter().filter(|r| r.instance.starts_with("E ")))
            }),
        },
        Criterion {
            name: "DAHA relation suite",
            budget: secs(300),
            run: Box::new(move || summarize(&suite(Suite::DahaRelations, SuiteConfig { degree: Some(3), ..cfg() }))),
        },
        Criterion {
            name: "eigenvalue formula",
            budget: secs(600),
            run: Box::new(move || {
                let rs = o2.get_or_init(|| suite(Suite::HhlOracle, with_size(4)));
                summarize(rs.iter().filter(|r| r.instance.starts_with("Y ")))
            }),
        },
        Criterion {
            name: "Hall-Littlewood duality",
            budget: secs(120),
            run: Box::new(move || summarize(&suite(Suite::HlDuality, with_size(6)))),
        },
        Criterion {
            name: "A_lambda identification",
            budget: secs(600),
            run: Box::new(move || summarize(&suite(Suite::AMacdonald, with_size(5)))),
        },
        Criterion {
            name: "tail-expansion theorem",
            budget: secs(600),
            run: Box::new(move || {
                summarize(&suite(Suite::TailExpansion, SuiteConfig { max_size: Some(3), n: Some(2), max_m: Some(3), ..cfg() }))
            }),
        },
        Criterion {
            name: "convergence certificates",
            budget: secs(600),
            run: Box::new(move || summarize(&suite(Suite::Convergence, with_size(3)))),
        },
        Criterion {
            name: "basis and simple spectrum",
            budget: secs(600),
            run: Box::new(move || summarize(&suite(Suite::BasisRank, SuiteConfig { degree: Some(4), n: Some(3), ..cfg() }))),
        },
        Criterion {
            name: "recurrence suite",
            budget: secs(600),
            run: Box::new(move || summarize(&suite(Suite::Recurrences, with_size(3)))),
        },
        Criterion {
            name: "Psi_p1 diagonality",
            budget: secs(600),
            run: Box::new(move || summarize(&suite(Suite::Psi, with_size(3)))),
        },
    ];

    let mut all_ok = true;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let line = match outcome {
            Ok(detail) if took <= c.budget => format!("PASS {:>2}. {} ({detail}; {:.2?})", k + 1, c.name, took),
            Ok(detail) => format!("FAIL {:>2}. {} (over budget {:?}: {detail}; {:.2?})", k + 1, c.name, c.budget, took),
            Err(w) => format!("FAIL {:>2}. {} ({w}; {:.2?})", k + 1, c.name, took),
        };
        all_ok &= line.starts_with("PASS");
        println!("{line}");
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
