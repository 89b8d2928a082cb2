//! Acceptance criteria 1-8 with exact rational equality.
//!
//! Prints one PASS/FAIL line per criterion followed by its sub-checks. Two
//! sub-checks state identities that do not hold (the `1 + t_1^2` negative
//! control and the displayed central terms at `|k| = 4`); they are evaluated as
//! stated, so criteria 3 and 5 print FAIL. The process exits non-zero only if
//! some sub-check disagrees with its recorded expectation.

use std::collections::BTreeMap;
use std::thread;
use std::time::Instant;

use bkptau::gseries::{Alphabet, GradedSeries, Mono};
use bkptau::hirota::{hirota_residual, is_bkp_tau};
use bkptau::partition::{enumerate_strict, enumerate_strict_upto};
use bkptau::qschur::{q_delta_hook, q_lambda, q_lambda_half};
use bkptau::rational::{int, pow, rat, Rational};
use bkptau::spectral::{
    annihilation_check, canonical_commutator_defect, constraint_check_bgw, constraint_check_with,
    constraint_operator, grassmannian_basis, ks_invariance_check, qsc_operator, LaurentWindow, Outcome,
    bgw_constraint_coeffs,
};
use bkptau::tau::{
    bgw_cutjoin, bgw_tau, cutjoin_tau, degree_recursion_check, hypergeometric_tau, wave_function, SSpec, Strategy,
    TauSpec, WeightData,
};
use bkptau::wops::{
    central_term_checks, closed_form_checks, commutator_table, eigenvalue_checks, j_op, l_op, Central, DOperator,
    NamedCheck,
};

struct Sub {
    label: String,
    pass: bool,
    /// `false` for a stated identity that is known not to hold.
    expected: bool,
}

struct Criterion {
    id: u32,
    title: &'static str,
    subs: Vec<Sub>,
    seconds: f64,
}

impl Criterion {
    fn pass(&self) -> bool {
        self.subs.iter().all(|s| s.pass)
    }

    fn as_expected(&self) -> bool {
        self.subs.iter().all(|s| s.pass == s.expected)
    }
}

#[derive(Default)]
struct Subs(Vec<Sub>);

impl Subs {
    fn check(&mut self, label: impl Into<String>, pass: bool) {
        self.0.push(Sub { label: label.into(), pass, expected: true });
    }

    fn known_false(&mut self, label: impl Into<String>, pass: bool) {
        self.0.push(Sub { label: label.into(), pass, expected: false });
    }
}

fn n_grid() -> Vec<Rational> {
    vec![int(0), rat(1, 3), rat(1, 2), rat(3, 2), int(2)]
}

fn hbar_grid() -> Vec<Rational> {
    vec![int(1), rat(2, 3)]
}

fn t1() -> Mono {
    Mono::var(1).unwrap()
}

fn s_map(pairs: &[(u32, Rational)]) -> BTreeMap<u32, Rational> {
    pairs.iter().cloned().collect()
}

fn spec(numer: Vec<Rational>, denom: Vec<Rational>, s: &[(u32, Rational)], hbar: Rational, cutoff: u32) -> TauSpec {
    TauSpec { weights: WeightData::new(numer, denom), s: SSpec::Specialized(s_map(s)), hbar, cutoff }
}

fn criterion_1() -> Vec<Sub> {
    let mut out = Subs::default();
    let d = 11;
    for n in n_grid() {
        for hbar in hbar_grid() {
            let sum = bgw_tau(&n, &hbar, d);
            let cj = bgw_cutjoin(&n, &hbar, d);
            let spot = &hbar * (int(1) - int(4) * &n * &n) / int(16);
            out.check(format!("N={n} hbar={hbar} D={d}: sum == cut-and-join ({} terms)", sum.len()), sum == cj);
            out.check(format!("N={n} hbar={hbar}: t1 coefficient = hbar(1-4N^2)/16 = {spot}"), sum.coeff(&t1()) == spot && cj.coeff(&t1()) == spot);
        }
    }
    for hbar in hbar_grid() {
        let want = int(9) * &hbar * &hbar / int(512);
        let t1sq = Mono::from_pairs(&[(1, 2)]).unwrap();
        let ok = bgw_tau(&int(0), &hbar, d).coeff(&t1sq) == want && bgw_cutjoin(&int(0), &hbar, d).coeff(&t1sq) == want;
        out.check(format!("N=0 hbar={hbar}: t1^2 coefficient = 9 hbar^2/512 = {want}"), ok);
    }
    out.0
}

fn criterion_2() -> Vec<Sub> {
    let mut out = Subs::default();
    for d in [1, 4, 11] {
        for hbar in hbar_grid() {
            let one = GradedSeries::one(Alphabet::T, d);
            out.check(
                format!("N=1/2 hbar={hbar} D={d}: tau == 1 (both routes)"),
                bgw_tau(&rat(1, 2), &hbar, d) == one && bgw_cutjoin(&rat(1, 2), &hbar, d) == one,
            );
            let lin = one.add(&GradedSeries::time(1, d, -&hbar / int(2)).unwrap()).unwrap();
            out.check(
                format!("N=3/2 hbar={hbar} D={d}: tau == 1 - (hbar/2) t1 (both routes)"),
                bgw_tau(&rat(3, 2), &hbar, d) == lin && bgw_cutjoin(&rat(3, 2), &hbar, d) == lin,
            );
        }
    }
    out.0
}

fn criterion_3() -> Vec<Sub> {
    let mut out = Subs::default();
    let handles: Vec<_> = n_grid()
        .into_iter()
        .map(|n| thread::spawn(move || (n.clone(), is_bkp_tau(&bgw_tau(&n, &int(1), 12), 6, 6).unwrap().passed())))
        .collect();
    for h in handles {
        let (n, ok) = h.join().unwrap();
        out.check(format!("bgw_tau(N={n}, hbar=1, 12) passes at bidegree (6,6)"), ok);
    }
    let models = [
        ("(a,b)=(2,0) u={1/3,3/4} s={1:1/2}", spec(vec![rat(1, 3), rat(3, 4)], vec![], &[(1, rat(1, 2))], int(1), 10)),
        ("(a,b)=(0,1) w={1/3} s={1:1/2}", spec(vec![], vec![rat(1, 3)], &[(1, rat(1, 2))], int(1), 10)),
        (
            "(a,b)=(1,1) u={2/5} w={1/3} s={1:1/2,3:-1/3} hbar=2/3",
            spec(vec![rat(2, 5)], vec![rat(1, 3)], &[(1, rat(1, 2)), (3, rat(-1, 3))], rat(2, 3), 10),
        ),
    ];
    for (label, s) in models {
        let tau = hypergeometric_tau(&s).unwrap();
        out.check(format!("hypergeometric {label} passes at (5,5)"), is_bkp_tau(&tau, 5, 5).unwrap().passed());
    }
    let one = GradedSeries::one(Alphabet::T, 12);
    let t1sq = one.add(&GradedSeries::from_terms(Alphabet::T, 12, [(Mono::from_pairs(&[(1, 2)]).unwrap(), int(1))])).unwrap();
    let report = is_bkp_tau(&t1sq, 6, 6).unwrap();
    out.known_false(
        format!(
            "negative control 1+t1^2 fails with a witness (observed: {:?}, residual zero through (6,6): {})",
            report.verdict,
            hirota_residual(&t1sq, 6, 6).unwrap().is_zero()
        ),
        !report.passed() && report.witness.is_some(),
    );
    let t3 = one.add(&GradedSeries::time(3, 12, int(1)).unwrap()).unwrap();
    let report = is_bkp_tau(&t3, 6, 6).unwrap();
    let w = report.witness.as_ref().map(|w| format!("{:?} x {:?} -> {}", w.mono, w.mono2.as_ref().unwrap(), w.coeff));
    out.check(format!("substitute negative control 1+t3 fails with witness {}", w.unwrap_or_default()), !report.passed());
    out.0
}

fn criterion_4() -> Vec<Sub> {
    let mut out = Subs::default();
    let d = 10;
    let mut lhs = GradedSeries::zero_joint(Alphabet::TS, (d, d));
    for lambda in enumerate_strict_upto(d) {
        let q = q_lambda(&lambda, d);
        lhs.add_assign_scaled(&q.tensor(&q, Alphabet::TS), &pow(&rat(1, 2), lambda.len() as u32)).unwrap();
    }
    let mut arg = GradedSeries::zero_joint(Alphabet::TS, (d, d));
    for k in (1..=d).step_by(2) {
        let m = Mono::var(k).unwrap();
        arg = arg
            .add(&GradedSeries::from_joint_terms(Alphabet::TS, (d, d), [((m.clone(), m), int(2 * k as i64))]))
            .unwrap();
    }
    out.check(
        format!("Cauchy identity exact through joint weight ({d},{d}) ({} terms)", lhs.len()),
        lhs == arg.exp_positive().unwrap(),
    );
    let delta = s_map(&[(1, int(1))]);
    let mut hooks = 0;
    let mut ok = true;
    for n in 0..=12 {
        for lambda in enumerate_strict(n) {
            ok &= q_lambda(&lambda, n).specialize(&delta).unwrap() == q_delta_hook(&lambda);
            hooks += 1;
        }
    }
    out.check(format!("hook formula == direct Q_lambda(delta_k1) for all {hooks} strict |lambda| <= 12"), ok);
    let handles: Vec<_> = enumerate_strict_upto(6)
        .into_iter()
        .map(|lambda| thread::spawn(move || is_bkp_tau(&q_lambda_half(&lambda, 12), 6, 6).unwrap().passed()))
        .collect();
    let count = handles.len();
    let all = handles.into_iter().map(|h| h.join().unwrap()).fold(true, |a, b| a & b);
    out.check(format!("all {count} Q_lambda(t/2) with |lambda| <= 6 pass Hirota at (6,6)"), all);
    out.0
}

fn summarize(out: &mut Subs, label: &str, checks: &[NamedCheck]) {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let detail = if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(" ")) };
    out.check(format!("{label} ({} relations{detail})", checks.len()), failed.is_empty());
}

fn criterion_5() -> Vec<Sub> {
    let mut out = Subs::default();
    let w = 8;
    let example = DOperator::commutator(&l_op(2, 18), &l_op(-2, 18), w).unwrap();
    out.check("[L2,L-2] = 8 L0 + 2 on window 8", example == l_op(0, w).scale(&int(8)).add(&DOperator::scalar(int(2), w)));
    let jj = DOperator::commutator(&j_op(1, 18), &j_op(-1, 18), w).unwrap();
    out.check("[J1,J-1] = 2 on window 8", jj.as_scalar() == Some(int(2)));

    let displayed = commutator_table(w, Central::Displayed, &int(0)).unwrap();
    let failed: Vec<&str> = displayed.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    out.known_false(
        format!(
            "displayed J/L/M table, central term k(k^2-1)/3, even |k| <= 4 ({} relations; failing: {})",
            displayed.len(),
            failed.join(" ")
        ),
        failed.is_empty(),
    );
    summarize(&mut out, "J/L/M table with central term k(k^2+2)/6", &commutator_table(w, Central::Twisted, &int(0)).unwrap());
    summarize(&mut out, "faa_di_bruno_W == W_km_closed, m <= 2, |k| <= 5, window 8", &closed_form_checks(w).unwrap());
    summarize(&mut out, "W_{D^k} eigenvalues via to_qbasis, k in {1,3,5}, |lambda| <= 8", &eigenvalue_checks(w).unwrap());
    summarize(&mut out, "[W_a,W_b] = W_[a,b] + mu(a,b)", &central_term_checks(w).unwrap());
    out.0
}

fn criterion_6() -> Vec<Sub> {
    let mut out = Subs::default();
    for hbar in hbar_grid() {
        let s = spec(vec![rat(1, 3), rat(3, 4)], vec![], &[(1, rat(1, 2))], hbar.clone(), 8);
        let sum = hypergeometric_tau(&s).unwrap();
        let ts = cutjoin_tau(&s, Strategy::TSpace).unwrap();
        let qb = cutjoin_tau(&s, Strategy::QBasis).unwrap();
        out.check(
            format!("(2,0) u={{1/3,3/4}} hbar={hbar} D=8: t-space == q-basis == partition sum ({} terms)", sum.len()),
            ts == qb && qb == sum,
        );
    }
    let s = spec(vec![int(2), rat(-1, 5)], vec![], &[(3, rat(2, 3))], int(1), 8);
    let sum = hypergeometric_tau(&s).unwrap();
    out.check(
        "(2,0) u={2,-1/5} s={3:2/3} D=8: t-space == q-basis == partition sum",
        cutjoin_tau(&s, Strategy::TSpace).unwrap() == sum && cutjoin_tau(&s, Strategy::QBasis).unwrap() == sum,
    );
    let r = degree_recursion_check(&TauSpec::bgw(rat(1, 3), int(1), 8)).unwrap();
    out.check(format!("degree recursion, BGW N=1/3, through weight {}", r.checked_through), r.passed);
    let r = degree_recursion_check(&spec(vec![rat(1, 3), rat(3, 4)], vec![], &[(1, rat(1, 2))], int(1), 8)).unwrap();
    out.check(format!("degree recursion, (2,0) u={{1/3,3/4}}, through weight {}", r.checked_through), r.passed);
    out.0
}

fn criterion_7() -> Vec<Sub> {
    let mut out = Subs::default();
    let bgw_s = |hbar: &Rational| s_map(&[(1, hbar * rat(1, 2))]);
    for n in n_grid() {
        let hbar = int(1);
        let w = WeightData::bgw(n.clone());
        let psi = wave_function(&bgw_tau(&n, &hbar, 12), 12).unwrap();
        let r = annihilation_check(&qsc_operator(&w, &bgw_s(&hbar)).unwrap(), &psi, -10).unwrap();
        out.check(
            format!("BGW N={n}: A Psi = 0 certified on [{}, {}]", r.certified[0], r.certified[1]),
            r.outcome == Outcome::Pass,
        );
    }
    let mono = spec(vec![], vec![rat(1, 3)], &[(1, rat(1, 2))], int(1), 12);
    let mono_s = mono.effective_s().unwrap();
    let psi = wave_function(&hypergeometric_tau(&mono).unwrap(), 12).unwrap();
    let r = annihilation_check(&qsc_operator(&mono.weights, &mono_s).unwrap(), &psi, -10).unwrap();
    out.check(
        format!("(0,1) w=1/3: third-order A Psi = 0 certified on [{}, {}]", r.certified[0], r.certified[1]),
        r.outcome == Outcome::Pass,
    );
    let mut corrupted = psi.clone();
    corrupted.add(-3, int(1));
    let r = annihilation_check(&qsc_operator(&mono.weights, &mono_s).unwrap(), &corrupted, -10).unwrap();
    out.check(format!("corrupted Psi fails with witness {:?}", r.witness), r.outcome == Outcome::Fail);

    let cases = [
        ("BGW N=1/3 hbar=2/3", WeightData::bgw(rat(1, 3)), bgw_s(&rat(2, 3))),
        ("(0,1) w=1/3", mono.weights.clone(), mono_s.clone()),
        ("(1,1) u=1/3 w=1/5 s={1:1/2,3:-1/3}", WeightData::new(vec![rat(1, 3)], vec![rat(1, 5)]), s_map(&[(1, rat(1, 2)), (3, rat(-1, 3))])),
    ];
    for (label, w, s) in &cases {
        let mut ok = true;
        for n in -4..=4 {
            let defect = canonical_commutator_defect(w, s, &LaurentWindow::monomial(n, -10)).unwrap();
            ok &= defect.is_zero() && defect.zmin <= -10;
        }
        out.check(format!("{label}: [p,q] z^n = z^n for |n| <= 4 down to z^-10"), ok);
    }
    for hbar in hbar_grid() {
        let psi = wave_function(&bgw_tau(&int(0), &hbar, 12), 12).unwrap();
        let phi = grassmannian_basis(&WeightData::bgw(int(0)), &bgw_s(&hbar), 1, -12).unwrap();
        let want = -&hbar / int(8);
        out.check(
            format!("BGW N=0 hbar={hbar}: Phi_1 == Psi on [-12, 0], z^-1 coefficient {want}"),
            phi.eq_on_window(&psi) && phi.coeff(-1) == Some(want),
        );
    }
    let phi = grassmannian_basis(&mono.weights, &mono_s, 1, -12).unwrap();
    out.check("(0,1) w=1/3: Phi_1 == Psi on [-12, 0]", phi.eq_on_window(&psi));
    for (label, w, s) in [("BGW N=0", WeightData::bgw(int(0)), bgw_s(&int(1))), ("(0,1) w=1/3", mono.weights.clone(), mono_s.clone())] {
        let r = ks_invariance_check(&w, &s, 4, -12).unwrap();
        out.check(format!("{label}: q, p preserve span(Phi_k), k_max=4"), r.outcome == Outcome::Pass);
    }
    out.0
}

fn criterion_8() -> Vec<Sub> {
    let mut out = Subs::default();
    for n in n_grid() {
        for hbar in hbar_grid() {
            let r = constraint_check_bgw(&n, &hbar, 8).unwrap();
            out.check(
                format!("N={n} hbar={hbar}: W_c tau = 0 through weight {}", r.checked_through),
                r.outcome == Outcome::Pass && r.checked_through >= 7,
            );
        }
    }
    let (_, c0) = bgw_constraint_coeffs(&int(0), &int(1));
    let op = constraint_operator(&rat(1, 3), &c0, 8).unwrap();
    let r = constraint_check_with(&op, &int(0), &int(1), 8).unwrap();
    out.check(
        format!("hbar/4 -> hbar/3 gives a nonzero residual (witness {:?})", r.witness.map(|w| (w.mono, w.coeff))),
        r.outcome == Outcome::Fail,
    );
    out.0
}

fn main() {
    let jobs: Vec<(u32, &'static str, fn() -> Vec<Sub>)> = vec![
        (1, "route equality, bgw_tau == bgw_cutjoin at D=11", criterion_1),
        (2, "polynomial taus at N=1/2 and N=3/2", criterion_2),
        (3, "Hirota certification", criterion_3),
        (4, "Q-function suite", criterion_4),
        (5, "W-algebra suite on window 8", criterion_5),
        (6, "cut-and-join for higher models", criterion_6),
        (7, "spectral suite", criterion_7),
        (8, "BGW constraint", criterion_8),
    ];
    let handles: Vec<_> = jobs
        .into_iter()
        .map(|(id, title, f)| {
            thread::spawn(move || {
                let start = Instant::now();
                let subs = f();
                Criterion { id, title, subs, seconds: start.elapsed().as_secs_f64() }
            })
        })
        .collect();
    let results: Vec<Criterion> = handles.into_iter().map(|h| h.join().unwrap()).collect();

    println!();
    for c in &results {
        println!("criterion {}: {} - {} ({:.1}s)", c.id, if c.pass() { "PASS" } else { "FAIL" }, c.title, c.seconds);
        for s in &c.subs {
            let note = if s.expected { "" } else { "  [stated identity does not hold; see README]" };
            println!("    {} {}{}", if s.pass { "pass" } else { "FAIL" }, s.label, note);
        }
    }
    let passed = results.iter().filter(|c| c.pass()).count();
    println!("\n{passed}/{} criteria pass", results.len());

    let unexpected: Vec<u32> = results.iter().filter(|c| !c.as_expected()).map(|c| c.id).collect();
    if !unexpected.is_empty() {
        println!("unexpected outcome in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
