//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! All checks are exact (boolean verdicts, exact valuations); there are no
//! numeric tolerances. A reference evaluator for flat `Mn` lattices is built
//! here from the order alone so the crate's tables are not checked against
//! themselves.

use std::collections::BTreeMap;
use std::time::Instant;

use mnlogic::corpus::{self, DROPPED_AXIOMS};
use mnlogic::diff::{self, DiffConfig, DiffReport, TableauVerdict};
use mnlogic::formula::{gen_dn, gen_eq3};
use mnlogic::lattice::{check_like_conditions, find_demorgan_negations, Capacity, Element};
use mnlogic::oracle::{self, Valuation};
use mnlogic::sample::Sampler;
use mnlogic::tableau::{self, ClosureMode, TableauConfig};
use mnlogic::{Formula, Lattice, Logic, Matrix, Oracle, Sequent};

/// Flat lattice with `n` middles: 0 = bottom, 1..=n middles, n+1 = top.
struct Flat {
    n: u32,
}

impl Flat {
    fn top(&self) -> u32 {
        self.n + 1
    }

    fn leq(&self, a: u32, b: u32) -> bool {
        a == b || a == 0 || b == self.top()
    }

    fn meet(&self, a: u32, b: u32) -> u32 {
        let lower: Vec<u32> = (0..=self.top()).filter(|&c| self.leq(c, a) && self.leq(c, b)).collect();
        *lower.iter().find(|&&c| lower.iter().all(|&d| self.leq(d, c))).unwrap()
    }

    fn join(&self, a: u32, b: u32) -> u32 {
        let upper: Vec<u32> = (0..=self.top()).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        *upper.iter().find(|&&c| upper.iter().all(|&d| self.leq(c, d))).unwrap()
    }

    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            self.top()
        } else if a == self.top() {
            0
        } else {
            a
        }
    }

    fn eval(&self, v: &BTreeMap<String, u32>, f: &Formula) -> u32 {
        match f {
            Formula::Var(x) => v[x],
            Formula::Neg(a) => self.neg(self.eval(v, a)),
            Formula::And(a, b) => self.meet(self.eval(v, a), self.eval(v, b)),
            Formula::Or(a, b) => self.join(self.eval(v, a), self.eval(v, b)),
        }
    }

    fn designated(&self, logic: Logic, a: u32) -> bool {
        match logic {
            Logic::Etl => a == self.top(),
            Logic::Nfl => a != 0,
        }
    }

    fn entails(&self, logic: Logic, s: &Sequent) -> bool {
        let vars: Vec<String> = s.variables().into_iter().collect();
        let size = self.n + 2;
        let total = (size as u64).pow(vars.len() as u32);
        (0..total).all(|mut code| {
            let mut v = BTreeMap::new();
            for x in vars.iter().rev() {
                v.insert(x.clone(), (code % size as u64) as u32);
                code /= size as u64;
            }
            !self.designated(logic, self.eval(&v, &s.premise)) || self.designated(logic, self.eval(&v, &s.conclusion))
        })
    }
}

fn mn(n: u32) -> Lattice {
    Lattice::mn(n).unwrap()
}

fn matrix(l: Lattice, logic: Logic) -> Matrix {
    Matrix::new(l, logic).unwrap()
}

fn seq(text: &str) -> Sequent {
    text.parse().unwrap()
}

fn valid(m: &Matrix, s: &Sequent) -> bool {
    Oracle::default().entails(m, s).unwrap().valid
}

fn subst(f: &Formula, map: &BTreeMap<&str, Formula>) -> Formula {
    match f {
        Formula::Var(x) => map.get(x.as_str()).cloned().unwrap_or_else(|| f.clone()),
        Formula::Neg(a) => Formula::neg(subst(a, map)),
        Formula::And(a, b) => Formula::and(subst(a, map), subst(b, map)),
        Formula::Or(a, b) => Formula::or(subst(a, map), subst(b, map)),
    }
}

struct Outcome {
    pass: bool,
    detail: String,
    /// Extra informational lines.
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            notes: Vec::new(),
        }
    }
}

/// M3 tables as printed, rows and columns in the order T, B, 0, N, F.
const M3_ORDER: [&str; 5] = ["T", "B", "0", "N", "F"];
const M3_NEG: [&str; 5] = ["F", "B", "0", "N", "T"];
const M3_AND: [[&str; 5]; 5] = [
    ["T", "B", "0", "N", "F"],
    ["B", "B", "F", "F", "F"],
    ["0", "F", "0", "F", "F"],
    ["N", "F", "F", "N", "F"],
    ["F", "F", "F", "F", "F"],
];
const M3_OR: [[&str; 5]; 5] = [
    ["T", "T", "T", "T", "T"],
    ["T", "B", "T", "T", "B"],
    ["T", "T", "0", "T", "0"],
    ["T", "T", "T", "N", "N"],
    ["T", "B", "0", "N", "F"],
];
const M2_ORDER: [&str; 4] = ["T", "B", "N", "F"];
const M2_NEG: [&str; 4] = ["F", "B", "N", "T"];
const M2_AND: [[&str; 4]; 4] = [
    ["T", "B", "N", "F"],
    ["B", "B", "F", "F"],
    ["N", "F", "N", "F"],
    ["F", "F", "F", "F"],
];
const M2_OR: [[&str; 4]; 4] = [
    ["T", "T", "T", "T"],
    ["T", "B", "T", "B"],
    ["T", "T", "N", "N"],
    ["T", "B", "N", "F"],
];

fn table_mismatches<const K: usize>(
    l: &Lattice,
    order: [&str; K],
    neg: [&str; K],
    and: [[&str; K]; K],
    or: [[&str; K]; K],
) -> (usize, usize) {
    let el = |s: &str| l.parse_element(s).unwrap();
    let (p, q) = (Formula::var("p"), Formula::var("q"));
    let (fneg, fand, f_or) = (Formula::neg(p.clone()), Formula::and(p.clone(), q.clone()), Formula::or(p, q));
    let mut checked = 0;
    let mut bad = 0;
    // reference: order-derived flat lattice, index 0 = Bot in Flat terms
    let n = (K - 2) as u32;
    let flat = Flat { n };
    let to_flat = |e: Element| match e {
        Element::Bot => 0,
        Element::Top => n + 1,
        Element::Mid(k) => k,
    };
    for i in 0..K {
        let mut v = Valuation::new();
        v.insert("p", el(order[i]));
        checked += 1;
        let got = oracle::eval(l, &v, &fneg).unwrap();
        if got != el(neg[i]) || to_flat(got) != flat.neg(to_flat(el(order[i]))) {
            bad += 1;
        }
        for j in 0..K {
            let mut v = v.clone();
            v.insert("q", el(order[j]));
            let (a, b) = (to_flat(el(order[i])), to_flat(el(order[j])));
            let got_and = oracle::eval(l, &v, &fand).unwrap();
            let got_or = oracle::eval(l, &v, &f_or).unwrap();
            checked += 2;
            if got_and != el(and[i][j]) || to_flat(got_and) != flat.meet(a, b) {
                bad += 1;
            }
            if got_or != el(or[i][j]) || to_flat(got_or) != flat.join(a, b) {
                bad += 1;
            }
        }
    }
    (checked, bad)
}

fn criterion_1() -> Outcome {
    let (c3, b3) = table_mismatches(&mn(3), M3_ORDER, M3_NEG, M3_AND, M3_OR);
    let (c2, b2) = table_mismatches(&mn(2), M2_ORDER, M2_NEG, M2_AND, M2_OR);
    Outcome::new(
        b3 == 0 && b2 == 0 && c3 == 55 && c2 == 36,
        format!("M3: {c3} entries, {b3} mismatches; M2: {c2} entries, {b2} mismatches"),
    )
}

fn criterion_2() -> Outcome {
    let entries = corpus::corpus();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut flipped = Vec::new();
    for e in &entries {
        let logic = if e.name.starts_with("ETL-") {
            Logic::Etl
        } else if e.name.starts_with("NFL-") {
            Logic::Nfl
        } else {
            continue;
        };
        let is_axiom = e
            .expectations
            .iter()
            .any(|x| x.provenance.contains("axiomatisation"));
        if !is_axiom {
            continue;
        }
        checked += 1;
        let in_m2 = valid(&matrix(mn(2), logic), &e.sequent);
        let in_m3 = valid(&matrix(mn(3), logic), &e.sequent);
        let ref_m2 = Flat { n: 2 }.entails(logic, &e.sequent);
        let ref_m3 = Flat { n: 3 }.entails(logic, &e.sequent);
        if !in_m3 {
            flipped.push(e.name.clone());
        }
        let dropped = DROPPED_AXIOMS.contains(&e.name.as_str());
        if !in_m2 || in_m3 == dropped || in_m2 != ref_m2 || in_m3 != ref_m3 {
            bad.push(e.name.clone());
        }
    }
    let mut flipped_sorted = flipped.clone();
    flipped_sorted.sort();
    let mut expected: Vec<String> = DROPPED_AXIOMS.iter().map(|s| s.to_string()).collect();
    expected.sort();
    let mut out = Outcome::new(
        bad.is_empty() && checked == 30 && flipped_sorted == expected,
        format!(
            "{checked} directional axioms; valid in M2; flipped in M3: {}; mismatches: {:?}",
            flipped.join(", "),
            bad
        ),
    );
    let typeset = seq("p & (q | r) |- (p | q) & (p | r)");
    out.notes.push(format!(
        "info: literal typeset NFL sequent p & (q | r) |- (p | q) & (p | r) is {} in NFL_M3 (the distributive p & (q | r) |- p & q | p & r is the NFL axiom that flips)",
        if valid(&matrix(mn(3), Logic::Nfl), &typeset) { "valid" } else { "invalid" }
    ));
    out
}

fn criterion_3() -> Outcome {
    let mut lattices: Vec<Lattice> = (1..=5).map(mn).collect();
    lattices.push(Lattice::n5());
    let mut counterexamples = 0;
    let mut checked = 0;
    for logic in Logic::ALL {
        for (k, schema) in corpus::lemma_schemas(logic).iter().enumerate() {
            let schema = seq(schema);
            let mut sampler = Sampler::with(1000 + k as u64 + 10 * logic as u64, &["p", "q", "r"], 2);
            let instances: Vec<Sequent> = (0..500)
                .map(|_| {
                    let map: BTreeMap<&str, Formula> =
                        [("p", sampler.formula()), ("q", sampler.formula()), ("r", sampler.formula())]
                            .into_iter()
                            .collect();
                    Sequent::new(subst(&schema.premise, &map), subst(&schema.conclusion, &map))
                })
                .collect();
            for l in &lattices {
                let m = matrix(l.clone(), logic);
                for s in &instances {
                    checked += 1;
                    if !valid(&m, s) {
                        counterexamples += 1;
                    }
                }
            }
        }
    }
    Outcome::new(
        counterexamples == 0,
        format!("{checked} instance checks over m1..m5, n5; {counterexamples} counterexamples"),
    )
}

fn mid_valuation(s: &Sequent) -> Valuation {
    let mut v = Valuation::new();
    for x in s.variables() {
        let i: u32 = x[1..].parse().unwrap();
        v.insert(x, Element::Mid(i));
    }
    v
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=5u32 {
        let d = gen_dn(n as usize).unwrap();
        for (logic, s) in [(Logic::Etl, d.clone()), (Logic::Nfl, d.dual())] {
            let lo = matrix(mn(n), logic);
            let hi = matrix(mn(n + 1), logic);
            let v_lo = valid(&lo, &s);
            let v_hi = valid(&hi, &s);
            let witness = oracle::refutes(&hi, &mid_valuation(&s), &s).unwrap();
            let ref_hi = Flat { n: n + 1 }.entails(logic, &s);
            let ref_lo = if n <= 4 { Flat { n }.entails(logic, &s) } else { v_lo };
            if !v_lo || v_hi || !witness || ref_lo != v_lo || ref_hi != v_hi {
                bad.push(format!("{logic} D{n}"));
            }
        }
    }
    let eq3 = gen_eq3();
    let e3 = valid(&matrix(mn(3), Logic::Etl), &eq3);
    let e4 = valid(&matrix(mn(4), Logic::Etl), &eq3);
    if !e3 || e4 {
        bad.push("eq3".into());
    }
    Outcome::new(
        bad.is_empty(),
        format!("D2..D5 and duals separate Mn from M(n+1) with v(pi)=Mid-i; eq3 M3 {e3}, M4 {e4}; failures {:?}", bad),
    )
}

fn criterion_5() -> Outcome {
    let config = TableauConfig::new(Capacity::Finite(3));
    let fig1 = tableau::prove(&seq("(p | q) & r |- p | q & r"), Logic::Etl, &config).unwrap();
    let fig1_ok = fig1.is_proved() && fig1.trees.len() == 2 && fig1.trees.iter().all(|t| t.is_closed());
    let fig2 = tableau::prove(&seq("p & ~p | q & ~q |- r"), Logic::Etl, &config).unwrap();
    let l = mn(3);
    let cm = fig2.countermodel().map(|v| v.display_in(&l)).unwrap_or_default();
    let fig2_ok = cm == "p=B, q=0, r=B";
    Outcome::new(
        fig1_ok && fig2_ok,
        format!("Fig1 {} (both trees closed: {fig1_ok}); Fig2 {} with {cm}", fig1.result_name(), fig2.result_name()),
    )
}

const DIFF_SEED: u64 = 7;
const DIFF_SAMPLES: usize = 10_000;

fn diff_runs(tableau: impl Fn(TableauConfig) -> TableauConfig) -> Vec<DiffReport> {
    let mut out = Vec::new();
    for logic in Logic::ALL {
        for n in 1..=4 {
            let mut cfg = DiffConfig::new(logic, n);
            cfg.samples = DIFF_SAMPLES;
            cfg.seed = DIFF_SEED;
            cfg.tableau = tableau(cfg.tableau);
            out.push(diff::run(&cfg));
        }
    }
    out
}

fn criterion_6(reports: &[DiffReport]) -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for r in reports {
        let total = r.cases.len();
        let s = r.semantic_agreement();
        let bad = r.cases.iter().filter(|c| c.bad_countermodel).count();
        pass &= s == total && bad == 0;
        let c5 = r.c5().expect("C5 is always included");
        notes.push(format!(
            "info: {}: semantic {s}/{total}, paper {}/{total}, bad countermodels {bad}, C5 oracle {} paper {} semantic {}",
            r.matrix,
            r.paper_agreement(),
            if c5.oracle_valid == Some(true) { "valid" } else { "invalid" },
            c5.paper,
            c5.semantic
        ));
        for w in r.witnesses(ClosureMode::Paper) {
            notes.push(format!("info:   paper divergence [{}] {} ({})", w.source, w.sequent, w.paper));
        }
    }
    let mut o = Outcome::new(
        pass,
        format!("{} matrices x ({DIFF_SAMPLES} samples, seed {DIFF_SEED}, corpus, C5)", reports.len()),
    );
    o.notes = notes;
    o
}

fn verdicts(r: &DiffReport) -> Vec<(TableauVerdict, TableauVerdict)> {
    r.cases.iter().map(|c| (c.paper, c.semantic)).collect()
}

fn criterion_7(base: &[DiffReport]) -> Outcome {
    let with_tr = diff_runs(|c| c.tr_rules(true));
    let with_tr_no_neg = diff_runs(|c| c.tr_rules(true).neg_pair_rules(false));
    let mut changed = 0;
    for ((b, t), tn) in base.iter().zip(&with_tr).zip(&with_tr_no_neg) {
        let vb = verdicts(b);
        for other in [verdicts(t), verdicts(tn)] {
            changed += vb.iter().zip(&other).filter(|(x, y)| x != y).count();
        }
    }
    Outcome::new(
        changed == 0,
        format!("Tr on, and Tr on without neg-pair rules, over the same suite: {changed} verdict changes"),
    )
}

fn criterion_8() -> Outcome {
    let omega = TableauConfig::new(Capacity::Omega);
    let mut bad = Vec::new();
    for n in 2..=6 {
        let d = gen_dn(n).unwrap();
        for (logic, s) in [(Logic::Etl, d.clone()), (Logic::Nfl, d.dual())] {
            let r = tableau::prove(&s, logic, &omega).unwrap();
            if r.is_proved() {
                bad.push(format!("{logic} D{n} proved"));
            }
        }
    }
    let mut finite: Vec<Lattice> = (1..=4).map(mn).collect();
    finite.push(Lattice::n5());
    let sample = diff::cases(DIFF_SAMPLES, DIFF_SEED, true);
    let (mut proved, mut refuted) = (0, 0);
    for logic in Logic::ALL {
        let matrices: Vec<Matrix> = finite.iter().map(|l| matrix(l.clone(), logic)).collect();
        for case in &sample {
            let r = tableau::prove(&case.sequent, logic, &omega).unwrap();
            match r.countermodel() {
                None => {
                    proved += 1;
                    if !matrices.iter().all(|m| valid(m, &case.sequent)) {
                        bad.push(format!("{logic} {} proved but finitely invalid", case.source));
                    }
                }
                Some(v) => {
                    refuted += 1;
                    let width = v
                        .iter()
                        .filter_map(|(_, e)| match e {
                            Element::Mid(k) => Some(*k),
                            _ => None,
                        })
                        .max()
                        .unwrap_or(1);
                    let m = matrix(mn(width), logic);
                    if !oracle::refutes(&m, v, &case.sequent).unwrap() {
                        bad.push(format!("{logic} {} countermodel fails in M{width}", case.source));
                    }
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("D2..D6 (and duals) refuted; {proved} proved / {refuted} refuted samples; failures {:?}", bad),
    )
}

fn criterion_9() -> Outcome {
    let ladder = find_demorgan_negations(&Lattice::ladder5()).unwrap();
    let mut standard = true;
    for k in 1..=4 {
        let l = mn(k);
        let carrier = l.carrier().unwrap().to_vec();
        let expected: Vec<Element> = carrier
            .iter()
            .map(|&e| match e {
                Element::Bot => Element::Top,
                Element::Top => Element::Bot,
                m => m,
            })
            .collect();
        standard &= find_demorgan_negations(&l).unwrap().iter().any(|m| m.images == expected);
    }
    let n5 = Lattice::n5();
    let carrier = n5.carrier().unwrap().to_vec();
    let (x, y, z) = (Element::Mid(1), Element::Mid(2), Element::Mid(3));
    let expected: Vec<Element> = carrier
        .iter()
        .map(|&e| match e {
            Element::Bot => Element::Top,
            Element::Top => Element::Bot,
            e if e == x => x,
            e if e == y => z,
            _ => y,
        })
        .collect();
    let n5_found = find_demorgan_negations(&n5).unwrap().iter().any(|m| m.images == expected);
    let like = Logic::ALL.iter().all(|&logic| {
        let r = check_like_conditions(&matrix(n5.clone(), logic)).unwrap();
        r.item(1).is_some_and(|c| c.passed) && r.item(2).is_some_and(|c| c.passed)
    });
    Outcome::new(
        ladder.is_empty() && standard && n5_found && like,
        format!(
            "ladder5: {} negations; standard found on m1..m4: {standard}; n5 x->x, y<->z found: {n5_found}; n5 items 1-2: {like}",
            ladder.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut dual_violations = 0;
    for n in [2, 3, 4] {
        let etl = matrix(mn(n), Logic::Etl);
        let nfl = matrix(mn(n), Logic::Nfl);
        let flat = Flat { n };
        let mut s = Sampler::new(10);
        for _ in 0..1000 {
            let seq = s.sequent();
            let a = valid(&etl, &seq);
            let b = valid(&nfl, &seq.dual());
            if a != b || a != flat.entails(Logic::Etl, &seq) || b != flat.entails(Logic::Nfl, &seq.dual()) {
                dual_violations += 1;
            }
        }
    }
    let mut notes = Vec::new();
    let mut modular_violations = 0;
    for logic in Logic::ALL {
        let m = matrix(mn(3), logic);
        let mut s = Sampler::new(11);
        let (mut tried, mut forward, mut converse) = (0, 0, 0);
        let mut first = None;
        while tried < 1000 {
            let (phi, chi, psi) = (s.formula(), s.formula(), s.formula());
            if !valid(&m, &Sequent::new(phi.clone(), chi.clone())) {
                continue;
            }
            tried += 1;
            let l = Formula::or(phi.clone(), Formula::and(psi.clone(), chi.clone()));
            let r = Formula::and(Formula::or(phi.clone(), psi.clone()), chi.clone());
            if !valid(&m, &Sequent::new(l.clone(), r.clone())) {
                forward += 1;
                first.get_or_insert(format!("phi = {phi}, chi = {chi}, psi = {psi}"));
            }
            if !valid(&m, &Sequent::new(r, l)) {
                converse += 1;
            }
        }
        modular_violations += forward + converse;
        notes.push(format!(
            "info: modular law in {}: {forward}/1000 forward violations, {converse} converse; first: {}",
            m.name(),
            first.unwrap_or_else(|| "none".into())
        ));
    }
    // Smallest counterexample: explosion makes phi entail any chi while phi's value is not below chi's.
    let m2 = matrix(mn(2), Logic::Etl);
    let phi = seq("p & ~p |- q");
    let lhs = seq("p & ~p | r & q |- (p & ~p | r) & q");
    let v = Valuation::named_in(&mn(2), &[("p", "B"), ("q", "N"), ("r", "T")]);
    notes.push(format!(
        "info: ETL_m2: p & ~p |= q is {}; p & ~p | r & q |= (p & ~p | r) & q is {} (p=B, q=N, r=T refutes: {})",
        valid(&m2, &phi),
        valid(&m2, &lhs),
        oracle::refutes(&m2, &v, &lhs).unwrap()
    ));
    let mut o = Outcome::new(
        dual_violations == 0 && modular_violations == 0,
        format!("duality: {dual_violations} violations over 3000 sequents (m2..m4); modular law: {modular_violations} violations"),
    );
    o.notes = notes;
    o
}

trait NamedIn {
    fn named_in(l: &Lattice, pairs: &[(&str, &str)]) -> Valuation;
}

impl NamedIn for Valuation {
    fn named_in(l: &Lattice, pairs: &[(&str, &str)]) -> Valuation {
        let mut v = Valuation::new();
        for (x, e) in pairs {
            v.insert(*x, l.parse_element(e).unwrap());
        }
        v
    }
}

fn report(k: usize, started: Instant, o: Outcome, passes: &mut Vec<usize>) {
    println!(
        "{} criterion {k}: {} [{:.1}s]",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        started.elapsed().as_secs_f64()
    );
    for n in o.notes {
        println!("    {n}");
    }
    if o.pass {
        passes.push(k);
    }
}

/// Criteria whose claim is false as stated; they are run and reported, but
/// do not fail the test binary.
const KNOWN_FALSE: [usize; 1] = [10];

fn main() {
    println!("acceptance: tolerance = exact match on every criterion (boolean verdicts and valuations)");
    let mut passes = Vec::new();
    let t = Instant::now();
    report(1, t, criterion_1(), &mut passes);
    let t = Instant::now();
    report(2, t, criterion_2(), &mut passes);
    let t = Instant::now();
    report(3, t, criterion_3(), &mut passes);
    let t = Instant::now();
    report(4, t, criterion_4(), &mut passes);
    let t = Instant::now();
    report(5, t, criterion_5(), &mut passes);
    let t = Instant::now();
    let base = diff_runs(|c| c);
    report(6, t, criterion_6(&base), &mut passes);
    let t = Instant::now();
    report(7, t, criterion_7(&base), &mut passes);
    let t = Instant::now();
    report(8, t, criterion_8(), &mut passes);
    let t = Instant::now();
    report(9, t, criterion_9(), &mut passes);
    let t = Instant::now();
    report(10, t, criterion_10(), &mut passes);

    let failed: Vec<usize> = (1..=10).filter(|k| !passes.contains(k)).collect();
    println!("acceptance: {}/10 PASS, failing: {:?}", passes.len(), failed);
    let unexpected: Vec<usize> = failed.iter().copied().filter(|k| !KNOWN_FALSE.contains(k)).collect();
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
    if !failed.is_empty() {
        println!("acceptance: remaining failures are known-false claims (modular law), reported above");
    }
}
