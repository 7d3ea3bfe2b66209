use std::collections::HashSet;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Report, SuiteConfig};
use crate::almost_sym::AlmostSym;
use crate::combinatorics::{compositions, partitions, partitions_up_to, Composition, Partition};
use crate::error::Result;
use crate::finite_daha::{
    check_relations, cherednik_y, deformed_y, e_eigensolve, e_hhl, e_intertwiner, epsilon, omega_symmetrizer, weight, FinitePoly,
};
use crate::linalg::{rank, rank_mod_p};
use crate::qt_field::{t_factorial, RatQT};
use crate::stable_limit::{
    a_lambda, basis_indices, basis_keys, coefficient_matrix, e_tail_expansion, e_tilde_pair, e_tilde_pair_finite, kappa,
    psi_f_diagonal, psi_p1, psi_p1_finite, psi_p1_formula, stable_weight, verify_claimed_limit, ConvergenceReport, StableIndex,
};
use crate::symfunc::{dual_q_kernel, hall_littlewood_p, macdonald_p, v_lambda, SymFunc};

const PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    DahaRelations,
    HhlOracle,
    TailExpansion,
    StableWeights,
    BasisRank,
    HlDuality,
    #[value(name = "A-macdonald")]
    AMacdonald,
    Recurrences,
    Psi,
    Convergence,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// Runs `suite`; the reports come back sorted.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let name = suite.name();
    let mut out = match suite {
        Suite::DahaRelations => daha_relations(&name, cfg)?,
        Suite::HhlOracle => hhl_oracle(&name, cfg)?,
        Suite::TailExpansion => tail_expansion(&name, cfg)?,
        Suite::StableWeights => stable_weights(&name, cfg)?,
        Suite::BasisRank => basis_rank(&name, cfg)?,
        Suite::HlDuality => hl_duality(&name, cfg)?,
        Suite::AMacdonald => a_macdonald(&name, cfg)?,
        Suite::Recurrences => recurrences(&name, cfg)?,
        Suite::Psi => psi(&name, cfg)?,
        Suite::Convergence => convergence(&name, cfg)?,
    };
    out.sort();
    Ok(out)
}

fn size(cfg: &SuiteConfig, default: usize) -> Result<usize> {
    let s = cfg.max_size.unwrap_or(default);
    cfg.caps.check("size", s, cfg.caps.max_degree)?;
    Ok(s)
}

fn all_compositions(max_size: usize, max_len: usize) -> Vec<Composition> {
    (0..=max_size).flat_map(|d| (1..=max_len).flat_map(move |n| compositions(d, n))).collect()
}

fn stable_indices(max_degree: usize, max_window: usize) -> Vec<StableIndex> {
    (0..=max_degree).flat_map(|d| basis_indices(d, max_window)).collect()
}

fn daha_relations(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ns = cfg.n.map_or(vec![3, 4], |n| vec![n]);
    let deg = cfg.degree.unwrap_or(3);
    cfg.caps.check("degree", deg, cfg.caps.max_degree)?;
    for &n in &ns {
        cfg.caps.check("n", n, cfg.caps.max_m)?;
    }
    Ok(ns
        .par_iter()
        .map(|&n| {
            let fails = check_relations(n, deg);
            let w = fails.first().map(|f| format!("{} on x^{:?}", f.relation, f.input)).unwrap_or_default();
            Report::new(name, format!("n={n} degree<={deg}"), fails.is_empty()).with_witness(w)
        })
        .collect())
}

fn hhl_oracle(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 4)?;
    let len = cfg.n.unwrap_or(s);
    cfg.caps.check("n", len, cfg.caps.max_m)?;
    let comps = all_compositions(s, len);
    Ok(comps
        .par_iter()
        .flat_map_iter(|mu| {
            let h = e_hhl(&mu.0);
            let eig = e_eigensolve(&mu.0);
            let int = e_intertwiner(&mu.0);
            let ok = matches!((&eig, &int), (Ok(a), Ok(b)) if *a == h && *b == h);
            let w = match (&eig, &int) {
                (Err(e), _) | (_, Err(e)) => e.to_string(),
                (Ok(a), _) if *a != h => "eigensolve differs from HHL".into(),
                _ => "intertwiner differs from HHL".into(),
            };
            let agree = Report::new(name, format!("E ({mu})"), ok).with_witness(w);
            let wt = weight(&mu.0);
            let bad = (1..=mu.len()).find(|&i| cherednik_y(i, &h).map_or(true, |y| y != h.scale(&wt.0[i - 1])));
            let eigen = Report::new(name, format!("Y ({mu})"), bad.is_none()).with_witness(format!(
                "Y_{} eigenvalue is not {}",
                bad.unwrap_or(0),
                bad.map_or(String::new(), |i| wt.0[i - 1].to_string())
            ));
            [agree, eigen]
        })
        .collect())
}

fn tail_expansion(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 3)?;
    let len = cfg.n.unwrap_or(2);
    let max_m = cfg.max_m.unwrap_or(3);
    cfg.caps.check("m + length", max_m + len, cfg.caps.max_m)?;
    let jobs: Vec<(Composition, usize)> =
        all_compositions(s, len).into_iter().flat_map(|mu| (0..=max_m).map(move |m| (mu.clone(), m))).collect();
    Ok(jobs
        .par_iter()
        .map(|(mu, m)| {
            let ok = e_tail_expansion(&mu.0, *m) == e_hhl(&mu.padded(*m).0);
            Report::new(name, format!("({mu}) m={m}"), ok).with_witness("rearranged sum differs from HHL")
        })
        .collect())
}

fn from_convergence(name: &str, instance: String, rep: ConvergenceReport) -> Report {
    let mut r = Report::new(name, instance, rep.passed());
    r.min_valuation_margin = rep.min_margin;
    r.slack = Some(rep.slack);
    r.witness = rep.witness.filter(|_| !r.passed());
    r
}

/// `[lo, hi]` for a convergence check starting at `lo`.
fn m_range(cfg: &SuiteConfig, lo: usize) -> Result<std::ops::RangeInclusive<usize>> {
    let hi = cfg.max_m.unwrap_or(lo + 3).max(lo);
    cfg.caps.check("m", hi, cfg.caps.max_m)?;
    Ok(lo..=hi)
}

fn stable_weights(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 2)?;
    let k = cfg.n.unwrap_or(2);
    cfg.caps.check("window", k, cfg.caps.max_window)?;
    let examples: [(&[usize], &[usize], Vec<RatQT>); 5] = [
        (&[], &[2], vec![]),
        (&[2], &[], vec![RatQT::qt(2, 1)]),
        (&[1, 1, 1], &[], vec![RatQT::qt(1, 3), RatQT::qt(1, 2), RatQT::qt(1, 1)]),
        (&[1, 1], &[1], vec![RatQT::qt(1, 3), RatQT::qt(1, 2)]),
        (&[1], &[1, 1], vec![RatQT::qt(1, 3)]),
    ];
    let mut out = Vec::new();
    for (mu, la, want) in examples {
        let idx = StableIndex::new(mu.to_vec(), la.to_vec())?;
        let got = stable_weight(&idx);
        out.push(Report::new(name, format!("example {idx}"), got.0 == want).with_witness(format!("got {got}")));
    }
    let mut jobs = Vec::new();
    for idx in stable_indices(s, k) {
        for i in 1..=idx.mu.len() + 1 {
            let lo = (idx.mu.len() + idx.degree()).max(i);
            jobs.push((idx.clone(), i, m_range(cfg, lo)?));
        }
    }
    let res: Result<Vec<Report>> = jobs
        .par_iter()
        .map(|(idx, i, ms)| {
            let e = e_tilde_pair(idx);
            let a = stable_weight(idx).get(*i);
            let slack = (idx.mu.len() + idx.degree()) as i64;
            let gen = |m: usize| -> Result<FinitePoly> {
                let g = e.truncate_pi(m)?;
                let mut r = deformed_y(*i, &g)?;
                r.add_assign_scaled(&g, &-a.clone());
                Ok(r)
            };
            let rep = verify_claimed_limit(gen, &AlmostSym::zero(e.window()), ms.clone(), slack)?;
            Ok(from_convergence(name, format!("Y_{i} {idx}"), rep))
        })
        .collect();
    out.extend(res?);
    Ok(out)
}

fn basis_rank(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let dmax = cfg.degree.unwrap_or(4);
    let kmax = cfg.n.unwrap_or(3);
    cfg.caps.check("degree", dmax, cfg.caps.max_degree)?;
    cfg.caps.check("window", kmax, cfg.caps.max_window)?;
    let blocks: Vec<(usize, usize)> = (0..=dmax).flat_map(|d| (0..=kmax).map(move |k| (d, k))).collect();
    let seed = cfg.seed;
    let trials = cfg.caps.oracle_trials;
    Ok(blocks
        .par_iter()
        .flat_map_iter(|&(d, k)| {
            let basis = basis_indices(d, k);
            let keys = basis_keys(d, k);
            let m = coefficient_matrix(d, k);
            let square = keys.len() == basis.len() && m.len() == keys.len();
            let block = format!("d={d} k={k}");
            let dims = Report::new(name, format!("dimension {block}"), square).with_witness(format!(
                "{} basis elements, {} monomials",
                basis.len(),
                keys.len()
            ));
            let (full, how) = if !square {
                (false, "not square")
            } else if d <= 3 {
                (rank(&m) == basis.len(), "symbolic")
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((d as u64) << 8 | k as u64));
                let ok = (0..trials).any(|_| {
                    let (q0, t0) = (rng.gen_range(2..PRIME), rng.gen_range(2..PRIME));
                    let ev: Option<Vec<Vec<u64>>> =
                        m.iter().map(|row| row.iter().map(|x| x.eval_mod(PRIME, q0, t0)).collect()).collect();
                    ev.is_some_and(|ev| rank_mod_p(ev, PRIME) == basis.len())
                });
                (ok, "random point")
            };
            let rank_r = Report::new(name, format!("rank {block} ({how})"), full).with_witness("coefficient matrix is singular");
            let labels: Vec<Vec<RatQT>> = basis
                .iter()
                .map(|i| {
                    let w = stable_weight(i);
                    let mut l: Vec<RatQT> = (1..=k).map(|j| w.get(j)).collect();
                    l.push(kappa(&i.joined()));
                    l
                })
                .collect();
            let mut seen = HashSet::new();
            let clash = basis.iter().zip(&labels).find(|(_, l)| !seen.insert(*l)).map(|(i, _)| i.to_string());
            let spec = Report::new(name, format!("spectrum {block}"), clash.is_none())
                .with_witness(format!("label of {} repeats", clash.unwrap_or_default()));
            [dims, rank_r, spec]
        })
        .collect())
}

fn hl_duality(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 6)?;
    let lams = partitions_up_to(s);
    let res: Result<Vec<[Report; 2]>> = lams
        .par_iter()
        .map(|lam| {
            let jing = hall_littlewood_p(lam);
            let n = lam.size();
            let mut e = lam.0.clone();
            e.resize(n, 0);
            let sym = omega_symmetrizer(&FinitePoly::monomial(e, RatQT::one()))?;
            let c = &(&t_factorial(n) / &t_factorial(n - lam.len())) * &(RatQT::one() - RatQT::t()).pow(lam.len() as i64);
            let finite = sym.scale(&c) == FinitePoly::from_symfunc(&jing, n);
            Ok([
                Report::new(name, format!("symmetrizer ({lam})"), finite).with_witness("differs from the finite symmetrizer"),
                Report::new(name, format!("kernel ({lam})"), dual_q_kernel(lam) == jing)
                    .with_witness("differs from the kernel extraction"),
            ])
        })
        .collect();
    Ok(res?.into_iter().flatten().collect())
}

fn a_macdonald(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 5)?;
    Ok(partitions_up_to(s)
        .par_iter()
        .map(|lam| {
            let omt = (RatQT::one() - RatQT::t()).pow(lam.len() as i64);
            let want = macdonald_p(lam).subs_q_inv().scale(&(&omt * &v_lambda(lam)));
            Report::new(name, format!("({lam})"), a_lambda(lam) == want).with_witness("not the scaled Macdonald P at 1/q")
        })
        .collect())
}

fn recurrences(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 3)?;
    let len = cfg.n.unwrap_or(s + 1);
    cfg.caps.check("length", len, cfg.caps.max_window)?;
    Ok(crate::stable_limit::check_recurrences(s, len)
        .into_iter()
        .map(|r| Report::new(name, format!("{}: {}", r.suite, r.instance), r.passed).with_witness("sides differ"))
        .collect())
}

/// `sum_i q^{lambda_i} t^i`, the geometric tail included.
fn kappa_by_hand(lam: &Partition) -> RatQT {
    let mut v = &RatQT::qt(0, lam.len() as i64 + 1) / &(RatQT::one() - RatQT::t());
    for (i, &p) in lam.0.iter().enumerate() {
        v += &RatQT::qt(p as i64, i as i64 + 1);
    }
    v
}

fn psi(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 3)?;
    let k = cfg.n.unwrap_or(3);
    cfg.caps.check("window", k, cfg.caps.max_window)?;
    let idxs = stable_indices(s, k);
    let res: Result<Vec<[Report; 3]>> = idxs
        .par_iter()
        .map(|i| {
            let e = e_tilde_pair(i);
            let want = e.scale(&kappa(&i.joined()));
            let diag = psi_p1(&e)?;
            Ok([
                Report::new(name, format!("formula {i}"), psi_p1_formula(&e)? == want)
                    .with_witness("proof formula is not kappa times"),
                Report::new(name, format!("diagonal {i}"), diag == want).with_witness("diagonal path is not kappa times"),
                Report::new(name, format!("F=p1 {i}"), psi_f_diagonal(&SymFunc::p(1), &e)? == diag)
                    .with_witness("Psi_F at F = p1 differs"),
            ])
        })
        .collect();
    let mut out: Vec<Report> = res?.into_iter().flatten().collect();
    let lams: Vec<Partition> = partitions_up_to(s + 1);
    let res: Result<Vec<Report>> = lams
        .par_iter()
        .map(|lam| {
            let a = AlmostSym::sym(&a_lambda(lam));
            let ok = psi_p1_formula(&a)? == a.scale(&kappa_by_hand(lam));
            Ok(Report::new(name, format!("A ({lam})"), ok).with_witness("eigenvalue is not sum q^l_i t^i"))
        })
        .collect();
    out.extend(res?);
    Ok(out)
}

fn convergence(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let s = size(cfg, 3)?;
    let k = cfg.n.unwrap_or(2);
    cfg.caps.check("window", k, cfg.caps.max_window)?;
    let mut out = Vec::new();

    // symmetrized monomials approach the transformed Hall-Littlewood functions
    let lams: Vec<Partition> = (1..=s).flat_map(partitions).collect();
    let res: Result<Vec<Report>> = lams
        .par_iter()
        .map(|lam| {
            let d = lam.size();
            let claimed = AlmostSym::sym(&hall_littlewood_p(lam));
            let gen = |m: usize| epsilon(0, &FinitePoly::monomial(lam.as_composition().padded(m - lam.len()).0, RatQT::one()));
            let rep = verify_claimed_limit(gen, &claimed, m_range(cfg, d)?, d as i64)?;
            Ok(from_convergence(name, format!("symmetrized x^({lam})"), rep))
        })
        .collect();
    out.extend(res?);

    let idxs = stable_indices(s, k);
    let res: Result<Vec<[Report; 2]>> = idxs
        .par_iter()
        .map(|i| {
            let (w, d) = (i.mu.len(), i.degree());
            let slack = (w + d) as i64;
            let lo = (w + d).max(i.joined().len()).max(w + 1);
            let rep = verify_claimed_limit(|m| e_tilde_pair_finite(i, m), &e_tilde_pair(i), m_range(cfg, lo)?, slack)?;
            let pair = from_convergence(name, format!("pair {i}"), rep);
            let e = e_tilde_pair(i);
            let rep = verify_claimed_limit(|m| psi_p1_finite(&e, m), &psi_p1(&e)?, m_range(cfg, (w + d).max(1))?, slack)?;
            Ok([pair, from_convergence(name, format!("psi {i}"), rep)])
        })
        .collect();
    out.extend(res?.into_iter().flatten());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_size: usize) -> SuiteConfig {
        SuiteConfig { max_size: Some(max_size), ..SuiteConfig::default() }
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::AMacdonald.name(), "A-macdonald");
        assert_eq!(Suite::DahaRelations.name(), "daha-relations");
        assert_eq!(Suite::from_str("hhl-oracle", false).unwrap(), Suite::HhlOracle);
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::HhlOracle, Suite::TailExpansion, Suite::HlDuality, Suite::AMacdonald, Suite::Recurrences, Suite::Psi] {
            let rs = run_suite(s, &small(2)).unwrap();
            assert!(!rs.is_empty());
            assert!(rs.iter().all(Report::passed), "{:?}", rs.iter().find(|r| !r.passed()));
        }
    }

    #[test]
    fn convergence_reports_margins() {
        let cfg = SuiteConfig { max_size: Some(1), n: Some(1), ..SuiteConfig::default() };
        let rs = run_suite(Suite::Convergence, &cfg).unwrap();
        assert!(rs.iter().all(|r| r.passed() && r.slack.is_some()), "{rs:?}");
    }

    #[test]
    fn deterministic() {
        let cfg = SuiteConfig { degree: Some(2), n: Some(2), seed: 7, ..SuiteConfig::default() };
        let a = run_suite(Suite::BasisRank, &cfg).unwrap();
        assert_eq!(a, run_suite(Suite::BasisRank, &cfg).unwrap());
        assert!(a.iter().all(Report::passed));
    }

    #[test]
    fn caps_are_enforced() {
        let cfg = SuiteConfig { max_size: Some(9), ..SuiteConfig::default() };
        assert!(run_suite(Suite::Psi, &cfg).is_err());
        let cfg = SuiteConfig { max_m: Some(40), max_size: Some(1), ..SuiteConfig::default() };
        assert!(run_suite(Suite::Convergence, &cfg).is_err());
    }
}
