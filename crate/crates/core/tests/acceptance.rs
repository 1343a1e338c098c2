//! Acceptance criteria 1–9. Each test prints one PASS/FAIL line (bypassing output
//! capture) and fails when the criterion or its runtime limit is not met.

mod common;

use std::time::{Duration, Instant};

use kohn_core::catlin_dangelo::{build_domain, run_effective_chain, run_ineffective_trace, CdParams};
use kohn_core::cli::{cmd_effective3d, cmd_verify, ExitStatus};
use kohn_core::groebner::{
    buchberger, ideal_membership, multivariate_gcd, quotient_dimension, squarefree_part, MonomialOrder, QuotientDim,
};
use kohn_core::kohn_effective3d::{run_effective3d, skoda_verify, Effective3dConfig};
use kohn_core::kohn_full_radical::{ineffectiveness_witness, run_full_radical, Caps};
use kohn_core::matrix_lab::{compare_procedures, verify_three_variable_obstruction, verify_two_variable_identity, Verdict};
use kohn_core::multiplier_core::{DomainFile, SpecialDomain, SubellOrder};
use kohn_core::polyring::{parse_in, Poly};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{jet_multiplicity, mono, random_poly, report, staircase_count};

fn p2(s: &str) -> Poly {
    parse_in(s, &["z1", "z2"]).unwrap()
}

fn p3(s: &str) -> Poly {
    parse_in(s, &["z1", "z2", "z3"]).unwrap()
}

/// (M, N, K) with M ∈ {2,3}, N ∈ {3,4}, K ∈ {M+1, …, M+6}.
fn grid() -> Vec<CdParams> {
    let mut out = Vec::new();
    for m in [2, 3] {
        for n in [3, 4] {
            for k in m + 1..=m + 6 {
                out.push(CdParams::new(m, n, k).unwrap());
            }
        }
    }
    out
}

fn finish(criterion: u32, name: &str, ok: bool, start: Instant, limit: Duration, detail: String) {
    let elapsed = start.elapsed();
    let pass = ok && elapsed < limit;
    report(criterion, name, pass, elapsed, limit, &detail);
    assert!(ok, "criterion {criterion}: {detail}");
    assert!(elapsed < limit, "criterion {criterion} took {elapsed:?}, limit {limit:?}");
}

#[test]
fn criterion_1_multiplicity_matches_jet_oracle() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for params in grid() {
        let gens = params.generators();
        let q = quotient_dimension(&gens);
        let oracle = jet_multiplicity(&gens, 4 * params.m * params.n);
        let mn = (params.m * params.n) as u64;
        let ok = matches!((q, oracle), (QuotientDim::Finite(a), Some(b)) if a == b as u64 && a <= mn);
        if !ok {
            bad.push(format!("{params:?}: engine {q}, oracle {oracle:?}"));
        }
    }
    let detail = format!("{} grid points, mismatches: {bad:?}", grid().len());
    finish(1, "multiplicity reproduction", bad.is_empty(), start, Duration::from_secs(10), detail);
}

#[test]
fn criterion_2_ineffectiveness_witness() {
    let start = Instant::now();
    let mut seen = Vec::new();
    let mut ok = true;
    for k in 4..=12 {
        let params = CdParams::new(2, 3, k).unwrap();
        let trace = run_ineffective_trace(params, 64);
        let witness = ineffectiveness_witness(&p2("z1"), &trace.j1, 64).expect("z1 lies in the radical of J1");
        let lower = witness.unwrap_or(65);
        ok &= lower >= params.m + k - 2;
        seen.push((k, witness));
    }
    finish(
        2,
        "ineffectiveness witness",
        ok,
        start,
        Duration::from_secs(60),
        format!("(K, least power of z1 in J1): {seen:?}"),
    );
}

#[test]
fn criterion_3_effective_chain_order() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for params in grid() {
        let (m, n) = (params.m as i64, params.n as i64);
        let expected = SubellOrder::reciprocal(BigInt::from((1i64 << (n + 4)) * (n + 1) * (n - 1) * (m - 1)));
        let chain = run_effective_chain(params).unwrap();
        let replay = chain.cert.verify();
        if !(chain.final_multiplier.poly.is_one() && chain.final_multiplier.order == expected && replay.ok) {
            bad.push(format!("{params:?}: {} vs {expected}, replay {:?}", chain.final_multiplier.order, replay.reason));
        }
    }
    finish(3, "effective-chain order", bad.is_empty(), start, Duration::from_secs(30), format!("mismatches: {bad:?}"));
}

#[test]
fn criterion_4_differentiation_counts() {
    let start = Instant::now();
    let mut effective = Vec::new();
    for params in grid() {
        let chain = run_effective_chain(params).unwrap();
        effective.push((params.n, chain.jacobian_stages));
    }
    let mut full = Vec::new();
    for k in 3..=8 {
        let out = run_full_radical(&build_domain(CdParams::new(2, 3, k).unwrap()), Caps::default()).unwrap();
        full.push((k, out.differentiation_stages()));
    }
    let effective_ok = effective.iter().all(|&(n, s)| s == n as usize + 2);
    let full_ok = full.iter().all(|&(_, s)| s == 4);
    let mut by_n: Vec<(u32, usize)> = effective.clone();
    by_n.sort();
    by_n.dedup();
    finish(
        4,
        "differentiation counts",
        effective_ok && full_ok,
        start,
        Duration::from_secs(30),
        format!("effective (N, stages) {by_n:?} expected N+2; full-radical (K, stages) for (2,3,K) {full:?} expected 4"),
    );
}

#[test]
fn criterion_5_two_variable_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut passed = 0;
    let mut reducible = 0;
    for _ in 0..100 {
        let a: Vec<Vec<Poly>> = (0..2).map(|_| (0..2).map(|_| random_poly(&mut rng, 2, 3, 4)).collect()).collect();
        passed += verify_two_variable_identity(&a) as usize;
        reducible += (compare_procedures(&a).verdict == Verdict::Reducible) as usize;
    }
    finish(
        5,
        "two-variable equivalence",
        passed == 100 && reducible == 100,
        start,
        Duration::from_secs(10),
        format!("identity {passed}/100, reducible verdicts {reducible}/100"),
    );
}

#[test]
fn criterion_6_three_variable_novelty() {
    let start = Instant::now();
    let instance = vec![
        vec![p3("z1"), p3("z3"), p3("0")],
        vec![p3("0"), p3("z2"), p3("z1")],
        vec![p3("0"), p3("0"), p3("z3")],
    ];
    let r = compare_procedures(&instance);
    let obstruction = verify_three_variable_obstruction(&p3("z1"), &p3("z3^2"), &p3("z3"));
    let decomposition = r
        .decomposition
        .as_ref()
        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>());
    finish(
        6,
        "three-variable novelty",
        r.verdict == Verdict::New && obstruction,
        start,
        Duration::from_secs(5),
        format!(
            "instance verdict {:?} (difference {}, row coefficients {decomposition:?}); obstruction {obstruction}",
            r.verdict, r.difference
        ),
    );
}

#[test]
fn criterion_7_effective3d_end_to_end() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, gens, q) in [("coordinates", ["z1", "z2"], 1u64), ("squares", ["z1^2", "z2^2"], 4)] {
        let domain_path = dir.path().join(format!("{name}.json"));
        let cert_path = dir.path().join(format!("{name}.cert.json"));
        let file = DomainFile {
            variables: vec!["z1".into(), "z2".into()],
            generators: gens.iter().map(|s| s.to_string()).collect(),
        };
        std::fs::write(&domain_path, serde_json::to_string(&file).unwrap()).unwrap();
        let run = cmd_effective3d(&domain_path, Effective3dConfig::default(), Some(&cert_path));
        let verified = cmd_verify(&domain_path, &cert_path);
        let bound = SubellOrder::reciprocal(BigInt::from(3u64 * q.pow(7)) << (q * q + 3));
        let final_order: SubellOrder = run.report["final_order"].as_str().unwrap_or("0").parse().unwrap_or(bound.half());
        let this = run.status == ExitStatus::Success
            && run.report["final_multiplier"] == "1"
            && final_order >= bound
            && verified.status == ExitStatus::Success;
        ok &= this;
        lines.push(format!("q={q}: final {final_order} >= {bound}, verify exit {}", verified.status.code()));
    }
    finish(7, "effective3d end to end", ok, start, Duration::from_secs(300), lines.join("; "));
}

#[test]
fn criterion_8_skoda_property() {
    let start = Instant::now();
    let suite = [
        "z1^2", "z1*z2", "z1^3", "z1^2*z2", "z1^4", "z1^3*z2", "z1^2*z2^2", "z1^5", "z1^4*z2", "z1^3*z2^2",
        "z1^2 + z2^2", "z1^2 + z2^3", "z1^3 + z2^3", "z1^2 + z2^5", "z1^3 + z2^4", "z1^2*z2 + z2^4", "z1^4 + z1*z2^2",
        "z1^2*z2 + z1*z2^2", "z1^5 + z2^5", "z1^3*z2 + z2^5",
    ];
    let failures: Vec<&str> = suite.iter().copied().filter(|f| !skoda_verify(&p2(f)).holds).collect();
    finish(
        8,
        "Skoda property",
        suite.len() == 20 && failures.is_empty(),
        start,
        Duration::from_secs(30),
        format!("{} polynomials, failures {failures:?}", suite.len()),
    );
}

/// Antichains of monomials `z1^i z2^j` with `1 ≤ i + j ≤ 4`.
fn monomial_antichains() -> Vec<Vec<(u32, u32)>> {
    let monos: Vec<(u32, u32)> = (1..=4).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
    let divides = |a: (u32, u32), b: (u32, u32)| a.0 <= b.0 && a.1 <= b.1;
    let mut out = Vec::new();
    fn rec(
        k: usize,
        monos: &[(u32, u32)],
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
        divides: &dyn Fn((u32, u32), (u32, u32)) -> bool,
    ) {
        if k == monos.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        rec(k + 1, monos, cur, out, divides);
        let m = monos[k];
        if cur.iter().all(|&c| !divides(c, m) && !divides(m, c)) {
            cur.push(m);
            rec(k + 1, monos, cur, out, divides);
            cur.pop();
        }
    }
    rec(0, &monos, &mut Vec::new(), &mut out, &divides);
    out
}

#[test]
fn criterion_9_property_suites() {
    let start = Instant::now();
    let mut notes = Vec::new();

    // Staircase dimension on every monomial ideal generated in degree ≤ 4.
    let ideals = monomial_antichains();
    let staircase_bad = ideals
        .iter()
        .filter(|gens| {
            let polys: Vec<Poly> = gens.iter().map(|&(i, j)| mono(&[i, j])).collect();
            quotient_dimension(&polys).finite() != staircase_count(gens)
        })
        .count();
    notes.push(format!("staircase {}/{} agree", ideals.len() - staircase_bad, ideals.len()));

    // Idempotence and membership consistency on seeded random ideals.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut gb_bad = 0;
    for _ in 0..40 {
        let gens: Vec<Poly> = (0..3).map(|_| random_poly(&mut rng, 2, 3, 3)).filter(|p| !p.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        let gb = buchberger(2, &gens, MonomialOrder::DegLex);
        let again = buchberger(2, gb.basis(), MonomialOrder::DegLex);
        let combo = gens
            .iter()
            .fold(Poly::zero(2), |acc, g| &acc + &(&random_poly(&mut rng, 2, 2, 2) * g));
        let consistent = again.basis() == gb.basis()
            && gens.iter().all(|g| gb.contains(g))
            && gb.basis().iter().all(|b| ideal_membership(b, &gens))
            && ideal_membership(&combo, &gens);
        gb_bad += (!consistent) as usize;
    }
    notes.push(format!("groebner inconsistencies {gb_bad}"));

    // gcd and squarefree oracles from products with known factors.
    let mut factor_bad = 0;
    let factors = ["z1 + z2", "z1 - 2*z2", "z1^2 + z2", "z2^2 - 3*z1", "z1*z2 + 1"];
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            let (fa, fb) = (p2(a), p2(b));
            let g = multivariate_gcd(&(&fa.pow(2) * &fb), &(&fa * &fb.pow(3)));
            factor_bad += (!g.is_unit_multiple_of(&(&fa * &fb))) as usize;
            let sq = squarefree_part(&(&fa.pow(3) * &fb.pow(2))).expect("two variables");
            factor_bad += (!sq.is_unit_multiple_of(&(&fa * &fb))) as usize;
        }
    }
    notes.push(format!("gcd/squarefree mismatches {factor_bad}"));

    // Wedge identities inside every general effective3d run.
    let mut wedge_bad = 0;
    let mut wedge_total = 0;
    for gens in [["z1", "z2^2"], ["z1 + z2^2", "z2^2"], ["z1^2", "z2^2"], ["z1^2 - z2^2", "z1*z2"]] {
        let domain = SpecialDomain::with_default_names(gens.iter().map(|g| p2(g)).collect()).unwrap();
        let run = run_effective3d(&domain, &Effective3dConfig::default()).unwrap();
        wedge_total += run.wedge_checks.len();
        wedge_bad += run.wedge_checks.iter().filter(|ok| !**ok).count();
        wedge_bad += (!run.cert.verify().ok) as usize;
    }
    notes.push(format!("wedge identities {}/{wedge_total} exact", wedge_total - wedge_bad));

    let ok = staircase_bad == 0 && gb_bad == 0 && factor_bad == 0 && wedge_bad == 0 && wedge_total > 0;
    finish(9, "property suites", ok, start, Duration::from_secs(300), notes.join("; "));
}
