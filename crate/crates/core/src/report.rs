//! Reproduction suite: one entry per acceptance criterion, each a list of
//! named checks plus a data payload.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::engine::{
    direct_product, enumerate, green_definitional, green_scc, iso_tables, parse_table, witnessed_green,
    witnessed_partition, Budget, FiniteSemigroup, Green, GreenStructure, DEFAULT_MARGIN,
};
use crate::identities::{check_identity_window, p_r_congruence_probe, Identity, PStructure, Verdict as IdVerdict};
use crate::munn::{fis_equal, fis_multiply, fold, fold_shuffled, is_fis_idempotent, linear_automaton, munn_tree, MnTreeOracle};
use crate::stephen::{stephen_run, tau_equal, Presentation, PresentationOracle, StephenBudget, Verdict};
use crate::vmaps::{
    generate_ball, idempotent_formula, idempotent_formula_psi, j_chain, phi, phi_pow, psi, sample_compose,
    sample_intersect, sample_translate, VMap, VSet,
};
use crate::words::{invert_word, reduce, SignedLetter, Word};
use crate::zoo::{
    b2, bicyclic_d_witness, bicyclic_green, free_nil, is_square_free, mn_size_formula, mn_table, monogenic_monoid,
    null_semigroup, p_green, p_mult, product_x_y, random_maps, right_zero, squarefree_word, string_to_letters,
    sw_semigroup, transformation_semigroup, BicyclicOracle, POracle,
};

pub const CRITERIA: u8 = 11;

/// Wall-clock limits in seconds, indexed by criterion id − 1.
pub const TIME_LIMITS: [u64; CRITERIA as usize] = [1, 5, 5, 10, 10, 60, 10, 30, 30, 10, 60];

pub const M_PRESENTATION: &str = "inv-monoid a b ; b b = b ; b = b a b a^-1 ; a a^-1 = 1";
pub const B2_PRESENTATION: &str = "inv-semigroup a ; a a a = a a ; a a a^-1 = a a ; a^-1 a a = a a";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Reproduced,
    EvidenceOnly,
    Failed,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Reproduced => "reproduced",
            Status::EvidenceOnly => "evidence-only",
            Status::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub id: u8,
    pub claim: &'static str,
    pub subject: &'static str,
    pub status: Status,
    pub checks: Vec<Check>,
    pub data: Value,
    pub elapsed_ms: u128,
    pub limit_s: u64,
}

impl ReportEntry {
    pub fn elapsed(&self) -> Duration {
        Duration::from_millis(self.elapsed_ms as u64)
    }

    pub fn within_limit(&self) -> bool {
        self.elapsed_ms <= u128::from(self.limit_s) * 1000
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

/// Overrides for built-in data, used to demonstrate that a corrupted input
/// is caught.
#[derive(Clone, Debug, Default)]
pub struct Fixtures {
    /// Table text replacing the built-in B₂ in criterion 1.
    pub b2_table: Option<String>,
}

#[derive(Default)]
struct Checks {
    list: Vec<Check>,
}

impl Checks {
    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> bool {
        self.list.push(Check { name: name.into(), ok, detail: detail.into() });
        ok
    }

    fn all_ok(&self) -> bool {
        self.list.iter().all(|c| c.ok)
    }
}

/// Same equivalence, regardless of class numbering.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut fwd = std::collections::HashMap::new();
    let mut back = std::collections::HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
}

fn same_green(a: &GreenStructure, b: &GreenStructure) -> bool {
    Green::ALL.iter().all(|&g| same_partition(a.partition(g), b.partition(g)))
}

fn counts_json(g: &GreenStructure) -> Value {
    let [h, l, r, d, j] = g.counts();
    json!({ "H": h, "L": l, "R": r, "D": d, "J": j })
}

fn random_word(rng: &mut ChaCha8Rng, letters: u32, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::from_letters((0..len).map(|_| {
        let l = rng.gen_range(0..letters);
        if rng.gen_bool(0.5) {
            SignedLetter::pos(l)
        } else {
            SignedLetter::neg(l)
        }
    }))
}

fn b2_counts(fixtures: &Fixtures, c: &mut Checks) -> Value {
    let fs = match &fixtures.b2_table {
        Some(text) => match parse_table(text) {
            Ok(fs) => fs,
            Err(e) => {
                c.check("fixture parses", false, e.to_string());
                return Value::Null;
            }
        },
        None => b2(),
    };
    let scc = green_scc(&fs);
    let def = green_definitional(&fs);
    c.check("counts H=5 L=3 R=3 D=2 J=2", scc.counts() == [5, 3, 3, 2, 2], scc.to_string());
    c.check("scc and definitional agree", same_green(&scc, &def), def.to_string());
    json!({ "elements": fs.len(), "counts": counts_json(&scc) })
}

fn munn_mn(c: &mut Checks) -> Value {
    let m2 = mn_table(2).expect("M_2");
    let iso = iso_tables(&m2, &b2()).ok().flatten();
    c.check("M_2 ≅ B_2", iso.is_some(), format!("{iso:?}"));
    let mut sizes = Vec::new();
    for n in 1..=6usize {
        let formula = 1 + (1..n).map(|l| (l + 1) * (l + 1)).sum::<usize>();
        let oracle = MnTreeOracle { n };
        let brute = enumerate(&oracle, &oracle.generators(), Budget::default())
            .ok()
            .and_then(|e| e.semigroup().map(FiniteSemigroup::len));
        // M_1 is the trivial semigroup, which the table builder does not accept
        let table = if n > 1 { mn_table(n).map(|t| t.len()).ok() } else { Some(1) };
        c.check(
            &format!("|M_{n}| = {formula}"),
            brute == Some(formula) && table == Some(formula) && mn_size_formula(n) == formula,
            format!("trees {brute:?}, table {table:?}"),
        );
        sizes.push(json!({ "n": n, "formula": formula, "trees": brute }));
    }
    json!({ "sizes": sizes })
}

fn bicyclic(c: &mut Checks) -> Value {
    let radius = 8;
    let ball = enumerate(&BicyclicOracle, &BicyclicOracle::generators(), Budget::radius(radius)).expect("ball");
    let ball = ball.ball();
    let bad = ball.elements.iter().filter(|&&x| !bicyclic_d_witness(x).verify()).count();
    c.check("every ball element D-related to (0,0) by a verified witness", bad == 0, format!("{} elements, {bad} bad", ball.len()));

    let big = enumerate(&BicyclicOracle, &BicyclicOracle::generators(), Budget::radius(radius * DEFAULT_MARGIN)).expect("witness ball");
    let mut rows = serde_json::Map::new();
    for rel in [Green::L, Green::R] {
        let wg = witnessed_green(&BicyclicOracle, ball, rel, DEFAULT_MARGIN).expect("witnessed");
        let counts: Vec<usize> = wg.rows.iter().map(|r| r.classes).collect();
        c.check(&format!("witnessed {rel}-counts strictly increase"), counts.windows(2).all(|w| w[0] < w[1]), format!("{counts:?}"));
        let part = witnessed_partition(&BicyclicOracle, &ball.elements, &big.ball().elements, rel);
        let n = ball.len();
        let disagree = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| (part[i] == part[j]) != bicyclic_green(ball.elements[i], ball.elements[j], rel))
            .count();
        c.check(&format!("closed form agrees with witnessed {rel}"), disagree == 0, format!("{disagree} disagreeing pairs"));
        rows.insert(rel.to_string(), json!(counts));
    }
    json!({ "radius": radius, "ball": ball.len(), "witnessed_counts": rows })
}

fn p_window(c: &mut Checks) -> Value {
    let window = (-15, 15);
    let mut verdicts = serde_json::Map::new();
    for text in ["x(yz) = (xy)z", "x'' = x", "xx'x = x", "xx' = x'x", "x(y^0z)^0x = xy^0x^0z^0x", "x = xx'x"] {
        let id = Identity::parse(text).expect("identity");
        let v = check_identity_window(&PStructure, &id, window).expect("window check");
        c.check(&format!("{text} on [-15,15]"), v.verdict.holds(), v.to_string());
        verdicts.insert(text.into(), json!(v.to_string()));
    }
    let inverse = Identity::parse("xx'yy' = yy'xx'").expect("identity");
    let v = check_identity_window(&PStructure, &inverse, window).expect("window check");
    c.check("idempotents of P do not commute", matches!(v.verdict, IdVerdict::Fails(_)), v.to_string());
    verdicts.insert(inverse.to_string(), json!(v.to_string()));

    let probe = p_r_congruence_probe(15);
    c.check(
        "R is not a right congruence: (0∘1, 2∘1) = (1,3)",
        probe == Some((0, 2, 1)) && (p_mult(0, 1), p_mult(2, 1)) == (1, 3) && p_green(0, 2, Green::R) && !p_green(1, 3, Green::R),
        format!("{probe:?}"),
    );

    let elements: Vec<i64> = (window.0..=window.1).collect();
    let witnesses: Vec<i64> = (3 * window.0..=3 * window.1).collect();
    let l = witnessed_partition(&POracle, &elements, &witnesses, Green::L);
    let l_classes = l.iter().collect::<HashSet<_>>().len();
    c.check("two witnessed L-classes on the window", l_classes == 2, format!("{l_classes}"));
    let r = witnessed_partition(&POracle, &elements, &witnesses, Green::R);
    let odd_singletons = elements
        .iter()
        .enumerate()
        .filter(|(_, m)| m.rem_euclid(2) == 1)
        .all(|(i, _)| r.iter().filter(|&&k| k == r[i]).count() == 1);
    c.check("odd elements are singleton R-classes", odd_singletons, "");
    json!({ "window": [window.0, window.1], "identities": verdicts, "r_probe": probe, "l_classes": l_classes })
}

fn munn_properties(c: &mut Checks) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut eq, mut idem, mut confluent, mut mult) = (0, 0, 0, 0);
    let mut idempotents = 0;
    let samples = 500;
    for _ in 0..samples {
        let u = random_word(&mut rng, 2, 12);
        let v = random_word(&mut rng, 2, 12);
        let uu = u.concat(&invert_word(&u)).concat(&u);
        eq += usize::from(fis_equal(&u, &uu) == Ok(true));
        let is_idem = is_fis_idempotent(&u) == Ok(true);
        idempotents += usize::from(is_idem);
        idem += usize::from(is_idem == reduce(&u).is_empty());
        let lin = linear_automaton(&u);
        let folded = fold(&lin);
        confluent += usize::from((0..5).all(|_| fold_shuffled(&lin, rng.gen()) == folded));
        let (tu, tv, tuv) = (munn_tree(&u), munn_tree(&v), munn_tree(&u.concat(&v)));
        if let (Ok(tu), Ok(tv), Ok(tuv)) = (tu, tv, tuv) {
            mult += usize::from(fis_multiply(&tu, &tv).canonical() == tuv.canonical());
        }
    }
    c.check("fis_equal(u, uu⁻¹u)", eq == samples, format!("{eq}/{samples}"));
    c.check("idempotent iff reduced word is empty", idem == samples, format!("{idem}/{samples}"));
    c.check("folding is confluent under 5 shuffles", confluent == samples, format!("{confluent}/{samples}"));
    c.check("tree product matches concatenation", mult == samples, format!("{mult}/{samples}"));
    json!({ "samples": samples, "idempotent_samples": idempotents })
}

fn stephen_m(c: &mut Checks) -> Value {
    let pres = Presentation::parse(M_PRESENTATION).expect("M presentation");
    let mut equalities = Vec::new();
    for n in 0..=2 {
        let u = pres.parse_word(&format!("{} b", "a ".repeat(n))).expect("word");
        let v = pres.parse_word(&format!("{} b a^-1 b", "a ".repeat(n + 1))).expect("word");
        let verdict = tau_equal(&u, &v, &pres, StephenBudget::stages(25));
        c.check(&format!("a^{n}b τ a^{}ba⁻¹b", n + 1), matches!(verdict, Verdict::Equal { .. }), verdict.to_string());
        equalities.push(json!({ "n": n, "verdict": verdict.to_string() }));
    }
    let b = pres.parse_word("b").expect("word");
    let trace = stephen_run(&b, &pres, StephenBudget::stages(10));
    let counts = trace.vertex_counts();
    c.check(
        "stage vertex counts for b increase from stage 2 on",
        !trace.closed && counts.len() > 3 && counts[1..].windows(2).all(|w| w[0] < w[1]),
        format!("{counts:?}"),
    );
    json!({ "equalities": equalities, "b_stage_vertices": counts })
}

fn stephen_consistency(c: &mut Checks) -> Value {
    let free = Presentation::parse("inv-monoid a b").expect("free presentation");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut agree, mut equal_pairs) = (0, 0);
    let pairs = 100;
    for i in 0..pairs {
        let mut u = random_word(&mut rng, 2, 8);
        // two thirds of the pairs are equal by construction
        let v = match i % 3 {
            0 => u.concat(&invert_word(&u)).concat(&u),
            1 => {
                let (e, f) = (random_word(&mut rng, 2, 3), random_word(&mut rng, 2, 3));
                let ee = e.concat(&invert_word(&e));
                let ff = f.concat(&invert_word(&f));
                let v = u.concat(&ff).concat(&ee);
                u = u.concat(&ee).concat(&ff);
                v
            }
            _ => random_word(&mut rng, 2, 8),
        };
        let expected = fis_equal(&u, &v).unwrap_or(false);
        equal_pairs += usize::from(expected);
        let verdict = tau_equal(&u, &v, &free, StephenBudget::stages(5));
        let ok = match verdict {
            Verdict::Equal { .. } => expected,
            Verdict::Distinct => !expected,
            Verdict::Unknown => false,
        };
        agree += usize::from(ok);
    }
    c.check("free case: tau_equal ≡ fis_equal", agree == pairs, format!("{agree}/{pairs}, {equal_pairs} equal"));

    let idem = Presentation::parse("inv-monoid a ; a a = a").expect("presentation");
    let oracle = PresentationOracle::new(&idem, StephenBudget::default());
    let fs = enumerate(&oracle, &oracle.generators(), Budget::default()).ok().and_then(|e| e.into_semigroup());
    let reference = monogenic_monoid(1).expect("N_1");
    match fs {
        Some(fs) => {
            c.check("⟨a | aa=a⟩ traces all close", !oracle.incomplete(), "");
            let (g, h) = (green_scc(&fs), green_scc(&reference));
            c.check(
                "⟨a | aa=a⟩ matches the engine table",
                fs.len() == reference.len() && g.count(Green::D) == h.count(Green::D) && iso_tables(&fs, &reference).ok().flatten().is_some(),
                format!("{} elements, D={}", fs.len(), g.count(Green::D)),
            );
        }
        None => {
            c.check("⟨a | aa=a⟩ closes", false, "enumeration did not close");
        }
    }

    let b2p = Presentation::parse(B2_PRESENTATION).expect("B2 presentation");
    let oracle = PresentationOracle::new(&b2p, StephenBudget::default());
    let fs = enumerate(&oracle, &oracle.generators(), Budget::default()).ok().and_then(|e| e.into_semigroup());
    let iso = fs.as_ref().and_then(|fs| iso_tables(fs, &b2()).ok().flatten());
    c.check("zero-free B₂ presentation gives B₂", iso.is_some() && !oracle.incomplete(), format!("{:?}", fs.map(|f| f.len())));
    json!({ "pairs": pairs, "equal_pairs": equal_pairs })
}

fn vmaps(c: &mut Checks) -> Value {
    let p2 = phi().compose(&phi());
    c.check("dom φ² = V(1,0), im φ² = V(1,2)", p2.domain == VSet::v(1, 0) && p2.image() == VSet::v(1, 2), p2.to_string());
    let powers_ok = (1..=10).all(|n| {
        let p = phi_pow(n);
        p.domain == VSet::v(n - 1, 0) && p.image() == VSet::v(n - 1, n)
    });
    c.check("φⁿ : V(n−1,0) → V(n−1,n), n ≤ 10", powers_ok, "");
    let mut bad = Vec::new();
    for r in 0..=8 {
        for s in 0..=8 {
            if r + s > 0 && idempotent_formula(r, s) != VMap::identity_on(VSet::v(r + s - 1, r)) {
                bad.push((r, s));
            }
        }
    }
    c.check("φ^{−r}φ^{r+s}φ^{−s} = id|V(r+s−1,r)", bad.is_empty(), format!("{bad:?}"));
    let mut bad_psi = Vec::new();
    let mut bad_chain = Vec::new();
    for r in -8..=8 {
        for s in 0..=8 {
            if idempotent_formula_psi(r, s) != VMap::identity_on(VSet::v(r, s)) {
                bad_psi.push((r, s));
            }
            let j = j_chain(r, s);
            if j.domain != VSet::v(r, s) || j.image() != VSet::v(0, 0) {
                bad_chain.push((r, s));
            }
        }
    }
    c.check("ψ-conjugated idempotents are id|V(r,s)", bad_psi.is_empty(), format!("{bad_psi:?}"));
    c.check("j_chain maps V(r,s) onto V(0,0)", bad_chain.is_empty(), format!("{bad_chain:?}"));

    let ball = match generate_ball(&[phi(), psi()], 8) {
        Ok(b) => b,
        Err(e) => {
            c.check("ball of radius 8", false, e.to_string());
            return Value::Null;
        }
    };
    let idempotents: Vec<&VMap> = ball.elements.iter().filter(|m| m.shift == (0, 0)).collect();
    let domains_ok = idempotents.iter().all(|m| matches!(m.domain, VSet::V { .. } | VSet::Whole));
    c.check("ball idempotent domains are V-sets or X", domains_ok, format!("{} idempotents", idempotents.len()));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sampled = 0;
    let mut disagreements = 0;
    for _ in 0..10 {
        let f = ball.elements[rng.gen_range(0..ball.len())];
        let g = ball.elements[rng.gen_range(0..ball.len())];
        let seed = rng.gen();
        disagreements += usize::from(sample_compose(&f, &g, 1000, seed).is_err());
        disagreements += usize::from(sample_intersect(f.domain, g.domain, 1000, seed).is_err());
        disagreements += usize::from(sample_translate(f.domain, (rng.gen_range(-5..=5), rng.gen_range(-5..=5)), 1000, seed).is_err());
        sampled += 3000;
    }
    c.check("symbolic results agree with point sampling", disagreements == 0, format!("{sampled} probes, {disagreements} disagreements"));
    json!({ "ball": ball.len(), "idempotents": idempotents.len(), "probes": sampled })
}

fn squarefree(c: &mut Checks) -> Value {
    let w = squarefree_word(1000);
    c.check("1000-letter prefix is square-free", is_square_free(&w), "");
    let sw = sw_semigroup(6).expect("sw(6)");
    let zero = sw.zero().expect("sw has a zero");
    let squares_vanish = (0..sw.len()).filter(|&u| u != zero).all(|u| sw.mul(u, u) == zero);
    c.check("u·u = 0 for every nonzero u in sw(6)", squares_vanish, "");
    let g = green_scc(&sw);
    c.check("sw(6) J-classes are singletons", g.count(Green::J) == sw.len(), format!("J={} |S|={}", g.count(Green::J), sw.len()));
    let pattern = string_to_letters("xx").expect("pattern");
    let nil = free_nil(&pattern, 3, 6).expect("free_nil");
    let h = green_scc(&nil);
    c.check("free_nil(xx,3,6) J-classes are singletons", h.count(Green::J) == nil.len(), format!("J={} |S|={}", h.count(Green::J), nil.len()));
    json!({ "sw_elements": sw.len(), "free_nil_elements": nil.len() })
}

fn products(c: &mut Checks) -> Value {
    let mut data = serde_json::Map::new();
    let pairs = [
        ("B2×B2", b2(), b2()),
        ("N2×N3", monogenic_monoid(2).expect("N_2"), monogenic_monoid(3).expect("N_3")),
    ];
    for (name, a, b) in pairs {
        let prod = direct_product(&[a.clone(), b.clone()]).expect("product");
        let (ga, gb, gp) = (green_scc(&a), green_scc(&b), green_scc(&prod));
        let ok = Green::ALL.iter().all(|&k| gp.count(k) == ga.count(k) * gb.count(k));
        c.check(&format!("{name}: class counts multiply"), ok, gp.to_string());
        data.insert(name.into(), counts_json(&gp));
    }
    let rz = direct_product(&[right_zero(50).expect("rz"), null_semigroup(2).expect("null")]).expect("product");
    let r = green_scc(&rz).count(Green::R);
    c.check("right_zero(50)×null(2) has 51 R-classes", r == 51, format!("{r}"));
    data.insert("rz50×null2 R".into(), json!(r));

    let k = 3;
    let factors: Vec<FiniteSemigroup> = (1..=k + 1).map(|p| monogenic_monoid(p).expect("N_p")).collect();
    let prod = direct_product(&factors).expect("product");
    let encode = |exps: &[usize]| exps.iter().zip(&factors).fold(0, |acc, (&e, f)| acc * f.len() + e);
    let (x, y) = product_x_y(k);
    let g = green_scc(&prod);
    let j = g.related(Green::J, encode(&x), encode(&y));
    c.check("x and y in ΠN_p are not J-related", !j, format!("x={x:?} y={y:?}"));
    let nk = &factors[k];
    let no_uv = (0..nk.len()).all(|u| (0..nk.len()).all(|v| nk.product(&[u, k + 1, v]) != k));
    c.check("no u,v in N_{k+1} with a^k = u a^{k+1} v", no_uv, "");
    data.insert("x".into(), json!(x));
    data.insert("y".into(), json!(y));
    Value::Object(data)
}

fn cross_validation(c: &mut Checks) -> Value {
    let mut sizes = Vec::new();
    let (mut agree, mut dj, mut hlr) = (0, 0, 0);
    let runs = 25u64;
    for seed in 0..runs {
        let fs = match transformation_semigroup(4, &random_maps(4, 3, seed), Budget::default()) {
            Ok(fs) => fs,
            Err(e) => {
                c.check(&format!("closure for seed {seed}"), false, e.to_string());
                continue;
            }
        };
        let (s, d) = (green_scc(&fs), green_definitional(&fs));
        agree += usize::from(same_green(&s, &d));
        dj += usize::from(same_partition(&s.d, &s.j));
        let n = fs.len();
        let meet = (0..n).all(|x| {
            (0..n).all(|y| s.related(Green::H, x, y) == (s.related(Green::L, x, y) && s.related(Green::R, x, y)))
        });
        hlr += usize::from(meet);
        sizes.push(n);
    }
    let runs = runs as usize;
    c.check("green_scc ≡ green_definitional", agree == runs, format!("{agree}/{runs}"));
    c.check("D = J", dj == runs, format!("{dj}/{runs}"));
    c.check("H = L ∧ R", hlr == runs, format!("{hlr}/{runs}"));
    json!({ "sizes": sizes })
}

struct Criterion {
    claim: &'static str,
    subject: &'static str,
    evidence_only: bool,
    run: fn(&Fixtures, &mut Checks) -> Value,
}

const TABLE: [Criterion; CRITERIA as usize] = [
    Criterion { claim: "B₂ Green counts", subject: "five-element Brandt semigroup", evidence_only: false, run: b2_counts },
    Criterion { claim: "M_n sizes and M_2 ≅ B₂", subject: "Rees quotients of the monogenic free inverse semigroup", evidence_only: false, run: |_, c| munn_mn(c) },
    Criterion { claim: "bicyclic D-witnesses and growing L/R counts", subject: "bicyclic monoid", evidence_only: true, run: |_, c| bicyclic(c) },
    Criterion { claim: "P = (ℤ,∘) identities and classes on a window", subject: "P = (ℤ,∘)", evidence_only: true, run: |_, c| p_window(c) },
    Criterion { claim: "Munn tree properties on random words", subject: "free inverse semigroup", evidence_only: false, run: |_, c| munn_properties(c) },
    Criterion { claim: "Stephen on M", subject: "Schützenberger automata of M", evidence_only: true, run: |_, c| stephen_m(c) },
    Criterion { claim: "Stephen consistency", subject: "free and finite presentations", evidence_only: false, run: |_, c| stephen_consistency(c) },
    Criterion { claim: "V-map identities", subject: "partial bijections of ℤ × ℕ₀", evidence_only: false, run: |_, c| vmaps(c) },
    Criterion { claim: "square-free machinery", subject: "square-free words", evidence_only: false, run: |_, c| squarefree(c) },
    Criterion { claim: "product lemma properties", subject: "direct products", evidence_only: false, run: |_, c| products(c) },
    Criterion { claim: "engine cross-validation", subject: "transformation semigroups of degree 4", evidence_only: false, run: |_, c| cross_validation(c) },
];

pub fn run_criterion(id: u8, fixtures: &Fixtures) -> ReportEntry {
    assert!((1..=CRITERIA).contains(&id), "criteria are numbered 1..={CRITERIA}");
    let spec = &TABLE[usize::from(id - 1)];
    let mut checks = Checks::default();
    let start = Instant::now();
    let data = (spec.run)(fixtures, &mut checks);
    let elapsed_ms = start.elapsed().as_millis();
    let status = match (checks.all_ok() && !checks.list.is_empty(), spec.evidence_only) {
        (false, _) => Status::Failed,
        (true, true) => Status::EvidenceOnly,
        (true, false) => Status::Reproduced,
    };
    ReportEntry {
        id,
        claim: spec.claim,
        subject: spec.subject,
        status,
        checks: checks.list,
        data,
        elapsed_ms,
        limit_s: TIME_LIMITS[usize::from(id - 1)],
    }
}

/// All criteria, one thread each, in id order.
pub fn run_all(fixtures: &Fixtures) -> Vec<ReportEntry> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=CRITERIA).map(|id| scope.spawn(move || run_criterion(id, fixtures))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    })
}

pub fn any_failed(entries: &[ReportEntry]) -> bool {
    entries.iter().any(|e| e.status == Status::Failed)
}

pub fn render_markdown(entries: &[ReportEntry]) -> String {
    let mut out = String::from("# semilab reproduction report\n\n| # | claim | status | time |\n|---|---|---|---|\n");
    for e in entries {
        let _ = writeln!(out, "| {} | {} | {} | {} ms (limit {} s) |", e.id, e.claim, e.status, e.elapsed_ms, e.limit_s);
    }
    for e in entries {
        let _ = writeln!(out, "\n## {}. {}\n\nSubject: {}. Status: **{}**.\n", e.id, e.claim, e.subject, e.status);
        for c in &e.checks {
            let mark = if c.ok { "ok" } else { "FAILED" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "- [{mark}] {}", c.name);
            } else {
                let _ = writeln!(out, "- [{mark}] {}: {}", c.name, c.detail);
            }
        }
    }
    out
}

pub fn render_json(entries: &[ReportEntry]) -> String {
    serde_json::to_string_pretty(&json!({ "entries": entries, "failed": any_failed(entries) })).expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_compare_up_to_renaming() {
        assert!(same_partition(&[0, 0, 1], &[5, 5, 2]));
        assert!(!same_partition(&[0, 0, 1], &[0, 1, 1]));
        assert!(!same_partition(&[0, 1], &[0, 0]));
    }

    #[test]
    fn quick_criteria() {
        for id in [1, 2, 10] {
            let e = run_criterion(id, &Fixtures::default());
            assert_eq!(e.status, Status::Reproduced, "{:?}", e.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn tampered_b2_fails() {
        let mut text = crate::engine::write_table(&b2());
        text = text.replacen("row a: ", "row a: a ", 1);
        let e = run_criterion(1, &Fixtures { b2_table: Some(text) });
        assert_eq!(e.status, Status::Failed);
    }
}
