//! Exhaustive verification suites over bounded generator tables.
//!
//! Each suite enumerates every generator within a displacement bound and
//! checks algebra laws on the whole table.  A failed law produces a
//! counterexample entry carrying full operand dumps; entries are sorted and
//! deduplicated so repeated runs emit byte-identical reports (up to the
//! wall-clock field).  Law violations are reported, not thrown: a theorem
//! breaking on a concrete operand is exactly the kind of counterexample the
//! report exists to surface.

use std::collections::HashMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    generator_product, idempotents, term_weight_doubled, Element, StrandGenerator,
};
use crate::asteroids::CyclicLiftedPermutation;
use crate::cache;
use crate::error::Result;
use crate::io::{ElementRecord, GeneratorRecord};
use crate::oracle::{self, Positivity};
use crate::perm::LiftedPermutation;
use crate::poly::Monomial;

/// Cap on listed counterexamples; the total count is always reported.
const MAX_REPORTED_FAILURES: usize = 20;

/// The available verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Axioms of the boundary algebra: units, d^2 = 0, Leibniz,
    /// associativity, gradings, weight conservation, no outer variables.
    Dga,
    /// The same axioms for the cyclic variant (outer variables allowed).
    Asteroids,
    /// Geometric differential against the combinatorial one.
    OracleDiff,
    /// Geometric product against the combinatorial one.
    OracleMul,
    /// Partial-order laws: dominance versus descent paths.
    Order,
    /// Triangle-domain counting identities.
    Euler,
    /// Everything above.
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "dga",
        "asteroids",
        "oracle-diff",
        "oracle-mul",
        "order",
        "euler",
        "all",
    ];

    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "dga" => Some(Suite::Dga),
            "asteroids" => Some(Suite::Asteroids),
            "oracle-diff" => Some(Suite::OracleDiff),
            "oracle-mul" => Some(Suite::OracleMul),
            "order" => Some(Suite::Order),
            "euler" => Some(Suite::Euler),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dga => "dga",
            Suite::Asteroids => "asteroids",
            Suite::OracleDiff => "oracle-diff",
            Suite::OracleMul => "oracle-mul",
            Suite::Order => "order",
            Suite::Euler => "euler",
            Suite::All => "all",
        }
    }
}

/// Outcome of a verification run, serialized as the report JSON.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub m: i64,
    pub k: usize,
    pub max_disp: i64,
    pub checks_run: u64,
    pub failures_total: u64,
    /// Sorted, deduplicated counterexample dumps (first few when many).
    pub failures: Vec<String>,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures_total == 0
    }
}

/// Accumulator for checks and counterexamples; merging is associative, so
/// parallel reductions stay deterministic once failures are sorted.
#[derive(Default)]
struct Outcome {
    checks: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.checks += 1;
        self.failures.push(msg);
    }

    fn absorb(mut self, other: Outcome) -> Outcome {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

fn dump_gen<G: StrandGenerator>(g: &G) -> String {
    serde_json::to_string(&GeneratorRecord::from_generator(g)).unwrap_or_else(|_| g.to_string())
}

fn dump_element<G: StrandGenerator>(e: &Element<G>) -> String {
    serde_json::to_string(&ElementRecord::from_element(e))
        .unwrap_or_else(|_| "<unprintable element>".into())
}

/// Runs a fallible step as part of a check: an error becomes a
/// counterexample entry instead of aborting the suite.
fn guard<T>(out: &mut Outcome, what: impl FnOnce() -> String, result: Result<T>) -> Option<T> {
    match result {
        Ok(value) => Some(value),
        Err(err) => {
            out.fail(format!("{}: {err}", what()));
            None
        }
    }
}

/// Runs the given suite at the given bounds and assembles the report.
pub fn run(
    suite: Suite,
    m: i64,
    k: usize,
    max_disp: i64,
    cache_dir: Option<&Path>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let needs_pong = !matches!(suite, Suite::Asteroids);
    let needs_asteroids = matches!(suite, Suite::Asteroids | Suite::All);

    let pong_gens: Option<Vec<LiftedPermutation>> = if needs_pong {
        Some(cache::generators(cache_dir, m, k, max_disp)?)
    } else {
        None
    };
    let asteroid_gens: Option<Vec<CyclicLiftedPermutation>> = if needs_asteroids {
        Some(cache::generators(cache_dir, m, k, max_disp)?)
    } else {
        None
    };

    let mut total = Outcome::default();
    if let Some(gens) = &pong_gens {
        if matches!(suite, Suite::Dga | Suite::All) {
            total = total.absorb(dga_outcome(m, k, gens, true)?);
        }
        if matches!(suite, Suite::Order | Suite::All) {
            total = total.absorb(order_outcome(gens));
        }
        if matches!(suite, Suite::Euler | Suite::All) {
            total = total.absorb(euler_outcome(m, gens));
        }
        if matches!(suite, Suite::OracleDiff | Suite::All) {
            total = total.absorb(oracle_diff_outcome(gens));
        }
        if matches!(suite, Suite::OracleMul | Suite::All) {
            total = total.absorb(oracle_mul_outcome(gens));
        }
    }
    if let Some(gens) = &asteroid_gens {
        total = total.absorb(dga_outcome(m, k, gens, false)?);
    }

    total.failures.sort();
    total.failures.dedup();
    let failures_total = total.failures.len() as u64;
    total.failures.truncate(MAX_REPORTED_FAILURES);
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        m,
        k,
        max_disp,
        checks_run: total.checks,
        failures_total,
        failures: total.failures,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// The shared axiom battery: units and idempotent decomposition, d^2 = 0,
/// Leibniz, associativity, grading laws, weight conservation, and (for the
/// pong family) the ban on outer variables in product corrections.
fn dga_outcome<G: StrandGenerator>(
    m: i64,
    k: usize,
    gens: &[G],
    forbid_outer_vars: bool,
) -> Result<Outcome> {
    let idems: Vec<G> = idempotents(m, k)?;
    let n = gens.len();

    let unit_out = gens
        .par_iter()
        .map(|g| {
            let mut o = Outcome::default();
            for e in &idems {
                let labels = e.domain_idem();
                if let Some(left) = guard(
                    &mut o,
                    || format!("left unit product e={}, g={}", dump_gen(e), dump_gen(g)),
                    generator_product(e, g),
                ) {
                    let ok = if labels == g.domain_idem() {
                        matches!(&left, Some((h, mono)) if h == g && mono.degree() == 0)
                    } else {
                        left.is_none()
                    };
                    o.check(ok, || {
                        format!(
                            "left unit: e*g is not [e = dom(g)]*g for e={}, g={}",
                            dump_gen(e),
                            dump_gen(g)
                        )
                    });
                }
                if let Some(right) = guard(
                    &mut o,
                    || format!("right unit product g={}, e={}", dump_gen(g), dump_gen(e)),
                    generator_product(g, e),
                ) {
                    let ok = if labels == g.image_idem() {
                        matches!(&right, Some((h, mono)) if h == g && mono.degree() == 0)
                    } else {
                        right.is_none()
                    };
                    o.check(ok, || {
                        format!(
                            "right unit: g*e is not [e = img(g)]*g for e={}, g={}",
                            dump_gen(e),
                            dump_gen(g)
                        )
                    });
                }
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb);

    let idem_out = {
        let mut o = Outcome::default();
        for e in &idems {
            if let Some(de) = guard(
                &mut o,
                || format!("differential of unit {}", dump_gen(e)),
                Element::generator(e.clone()).diff(),
            ) {
                o.check(de.is_zero(), || {
                    format!(
                        "unit differential: d(e) = {} is not zero for e={}",
                        dump_element(&de),
                        dump_gen(e)
                    )
                });
            }
        }
        o
    };

    // Generator elements and their differentials, shared by the per-pair
    // passes below.  A `None` differential already produced a failure entry.
    let elems: Vec<(Element<G>, Option<Element<G>>)> = gens
        .par_iter()
        .map(|g| {
            let e = Element::generator(g.clone());
            let d = e.diff().ok();
            (e, d)
        })
        .collect();

    let gen_out = gens
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut o = Outcome::default();
            let dg = match &elems[i].1 {
                Some(d) => d.clone(),
                None => {
                    o.fail(format!(
                        "differential of {} could not be computed",
                        dump_gen(g)
                    ));
                    return o;
                }
            };
            let wg = g.weights_doubled();
            let mg = g.maslov();
            for (res, poly) in dg.terms() {
                o.check(res.maslov() == mg - 1, || {
                    format!(
                        "grading: term {} of d({}) has grading {}, expected {}",
                        dump_gen(res),
                        dump_gen(g),
                        res.maslov(),
                        mg - 1
                    )
                });
                for mono in poly.monomials() {
                    o.check(term_weight_doubled(res, mono) == wg, || {
                        format!(
                            "weight conservation: term {} of d({}) has doubled weight \
                             {:?}, the generator has {:?}",
                            dump_gen(res),
                            dump_gen(g),
                            term_weight_doubled(res, mono),
                            wg
                        )
                    });
                }
            }
            if let Some(d2) = guard(
                &mut o,
                || format!("second differential of {}", dump_gen(g)),
                dg.diff(),
            ) {
                o.check(d2.is_zero(), || {
                    format!(
                        "d^2 is not zero: d(d({})) = {}",
                        dump_gen(g),
                        dump_element(&d2)
                    )
                });
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb);

    let vars = m as usize;
    let pair_out = (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (i, j) = (t / n, t % n);
            let (f, g) = (&gens[i], &gens[j]);
            let mut o = Outcome::default();

            if let Some(Some((h, mono))) = guard(
                &mut o,
                || format!("product of f={}, g={}", dump_gen(f), dump_gen(g)),
                generator_product(f, g),
            )
            .as_ref()
            {
                o.check(h.maslov() == f.maslov() + g.maslov(), || {
                    format!(
                        "grading: product of f={}, g={} has grading {}, expected {}",
                        dump_gen(f),
                        dump_gen(g),
                        h.maslov(),
                        f.maslov() + g.maslov()
                    )
                });
                let sum: Vec<i64> = f
                    .weights_doubled()
                    .iter()
                    .zip(g.weights_doubled())
                    .map(|(a, b)| a + b)
                    .collect();
                o.check(term_weight_doubled(h, mono) == sum, || {
                    format!(
                        "weight conservation: product of f={}, g={} has doubled \
                             weight {:?}, operands sum to {:?}",
                        dump_gen(f),
                        dump_gen(g),
                        term_weight_doubled(h, mono),
                        sum
                    )
                });
                if forbid_outer_vars {
                    let exps = mono.exponents();
                    o.check(exps[0] == 0 && exps[vars - 1] == 0, || {
                        format!(
                            "outer variable in product correction {exps:?} \
                                 for f={}, g={}",
                            dump_gen(f),
                            dump_gen(g)
                        )
                    });
                }
            }

            if let (Some(df), Some(dgg)) = (&elems[i].1, &elems[j].1) {
                let ef = &elems[i].0;
                let eg = &elems[j].0;
                let lhs = guard(
                    &mut o,
                    || format!("d(f*g) for f={}, g={}", dump_gen(f), dump_gen(g)),
                    ef.mu2(eg).and_then(|p| p.diff()),
                );
                let rhs = guard(
                    &mut o,
                    || format!("d(f)*g + f*d(g) for f={}, g={}", dump_gen(f), dump_gen(g)),
                    df.mu2(eg).and_then(|a| Ok(a.add(&ef.mu2(dgg)?))),
                );
                if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                    o.check(lhs == rhs, || {
                        format!(
                            "leibniz: d(f*g) = {} but d(f)*g + f*d(g) = {} for f={}, g={}",
                            dump_element(&lhs),
                            dump_element(&rhs),
                            dump_gen(f),
                            dump_gen(g)
                        )
                    });
                }
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb);

    let assoc_out = associativity_outcome(gens);

    Ok(unit_out
        .absorb(idem_out)
        .absorb(gen_out)
        .absorb(pair_out)
        .absorb(assoc_out))
}

/// One sparse row of a staged product table (absent key = zero product),
/// together with any staging errors hit while filling it.
type StagedRow<G> = (HashMap<usize, (G, Monomial)>, Vec<String>);

/// Checks `(f*g)*h = f*(g*h)` over every triple from the table, staging
/// product tables first so the cubic pass is pure lookups.
fn associativity_outcome<G: StrandGenerator>(gens: &[G]) -> Outcome {
    let n = gens.len();
    if n == 0 {
        return Outcome::default();
    }

    // Stage A: products of table pairs.  Errors become entries; the pair is
    // then left out of the staged tables, so dependent triples are skipped
    // rather than double-reported.
    let mut stage_out = Outcome::default();
    let raw: Vec<Result<Option<(G, Monomial)>>> = (0..n * n)
        .into_par_iter()
        .map(|t| generator_product(&gens[t / n], &gens[t % n]))
        .collect();
    let mut pair: Vec<Option<(G, Monomial)>> = Vec::with_capacity(n * n);
    for (t, entry) in raw.into_iter().enumerate() {
        match entry {
            Ok(p) => pair.push(p),
            Err(err) => {
                stage_out.fail(format!(
                    "product staging: {} * {}: {err}",
                    dump_gen(&gens[t / n]),
                    dump_gen(&gens[t % n])
                ));
                pair.push(None);
            }
        }
    }

    // Composites may exceed the displacement bound of the table; they are
    // interned so the staged tables can be indexed densely.
    let mut composites: Vec<G> = pair
        .iter()
        .filter_map(|p| p.as_ref().map(|(h, _)| h.clone()))
        .collect();
    composites.sort();
    composites.dedup();
    let comp_index: HashMap<&G, usize> = composites
        .iter()
        .enumerate()
        .map(|(idx, h)| (h, idx))
        .collect();

    // Stage B: composite-then-generator and generator-then-composite maps,
    // sparse per row (absence means the product is zero).
    let staged_b: Vec<StagedRow<G>> = composites
        .par_iter()
        .map(|h| {
            let mut row = HashMap::new();
            let mut errs = Vec::new();
            for (c_idx, c) in gens.iter().enumerate() {
                match generator_product(h, c) {
                    Ok(Some(p)) => {
                        row.insert(c_idx, p);
                    }
                    Ok(None) => {}
                    Err(err) => errs.push(format!(
                        "product staging: {} * {}: {err}",
                        dump_gen(h),
                        dump_gen(c)
                    )),
                }
            }
            (row, errs)
        })
        .collect();
    let mut comp_then_gen = Vec::with_capacity(composites.len());
    for (row, errs) in staged_b {
        comp_then_gen.push(row);
        for e in errs {
            stage_out.fail(e);
        }
    }

    let staged_b2: Vec<StagedRow<G>> = gens
        .par_iter()
        .map(|a| {
            let mut row = HashMap::new();
            let mut errs = Vec::new();
            for (h_idx, h) in composites.iter().enumerate() {
                match generator_product(a, h) {
                    Ok(Some(p)) => {
                        row.insert(h_idx, p);
                    }
                    Ok(None) => {}
                    Err(err) => errs.push(format!(
                        "product staging: {} * {}: {err}",
                        dump_gen(a),
                        dump_gen(h)
                    )),
                }
            }
            (row, errs)
        })
        .collect();
    let mut gen_then_comp = Vec::with_capacity(n);
    for (row, errs) in staged_b2 {
        gen_then_comp.push(row);
        for e in errs {
            stage_out.fail(e);
        }
    }

    // Stage C: one comparison per triple, all lookups.
    let triple_out = (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (i, j) = (t / n, t % n);
            let mut o = Outcome::default();
            let ab = &pair[t];
            let ab_row = ab.as_ref().map(|(h, _)| &comp_then_gen[comp_index[h]]);
            let row_i = &gen_then_comp[i];
            for (kk, _) in gens.iter().enumerate() {
                let lhs = ab
                    .as_ref()
                    .and_then(|(_, m1)| ab_row.unwrap().get(&kk).map(|(r, m2)| (r, m1, m2)));
                let bc = &pair[j * n + kk];
                let rhs = bc
                    .as_ref()
                    .and_then(|(h2, m3)| row_i.get(&comp_index[h2]).map(|(r2, m4)| (r2, m3, m4)));
                let ok = match (&lhs, &rhs) {
                    (None, None) => true,
                    (Some((r, a1, a2)), Some((r2, b1, b2))) => {
                        r == r2 && exponent_sums_equal(a1, a2, b1, b2)
                    }
                    _ => false,
                };
                o.check(ok, || {
                    format!(
                        "associativity: (f*g)*h differs from f*(g*h) for f={}, g={}, h={}",
                        dump_gen(&gens[i]),
                        dump_gen(&gens[j]),
                        dump_gen(&gens[kk])
                    )
                });
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb);

    stage_out.absorb(triple_out)
}

fn exponent_sums_equal(a1: &Monomial, a2: &Monomial, b1: &Monomial, b2: &Monomial) -> bool {
    a1.exponents()
        .iter()
        .zip(a2.exponents())
        .map(|(x, y)| x + y)
        .eq(b1
            .exponents()
            .iter()
            .zip(b2.exponents())
            .map(|(x, y)| x + y))
}

/// Order laws over pairs sharing both idempotents: reflexivity-as-equality,
/// antisymmetry, and descent paths matching the grading gap.  The dominance
/// and path criteria are cross-checked inside `oracle::positivity`; a
/// disagreement surfaces here as a counterexample.
fn order_outcome(gens: &[LiftedPermutation]) -> Outcome {
    let n = gens.len();
    (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (f, g) = (&gens[t / n], &gens[t % n]);
            let mut o = Outcome::default();
            if f.domain_idem() != g.domain_idem() || f.image_idem() != g.image_idem() {
                return o;
            }
            match oracle::positivity(f, g) {
                Err(err) => o.fail(format!(
                    "order comparison broke down for f={}, g={}: {err}",
                    dump_gen(f),
                    dump_gen(g)
                )),
                Ok(Positivity::Equal) => {
                    o.check(f == g, || {
                        format!(
                            "order: distinct states compare equal: f={}, g={}",
                            dump_gen(f),
                            dump_gen(g)
                        )
                    });
                }
                Ok(Positivity::Greater { path }) => {
                    o.check(path.len() as i64 == f.maslov() - g.maslov(), || {
                        format!(
                            "order: descent path of length {} does not match the \
                             grading gap {} for f={}, g={}",
                            path.len(),
                            f.maslov() - g.maslov(),
                            dump_gen(f),
                            dump_gen(g)
                        )
                    });
                    match oracle::positivity(g, f) {
                        Err(err) => o.fail(format!(
                            "order comparison broke down for f={}, g={}: {err}",
                            dump_gen(g),
                            dump_gen(f)
                        )),
                        Ok(reverse) => {
                            o.check(matches!(reverse, Positivity::Incomparable), || {
                                format!(
                                    "order: antisymmetry violated for f={}, g={}",
                                    dump_gen(f),
                                    dump_gen(g)
                                )
                            });
                        }
                    }
                }
                Ok(Positivity::Incomparable) => {
                    o.checks += 1;
                }
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb)
}

/// Triangle-domain identities over every composable pair: the counting
/// identities are enforced while the domain is built, nonnegativity and the
/// diagonal/defect match are checked here.
fn euler_outcome(m: i64, gens: &[LiftedPermutation]) -> Outcome {
    let n = gens.len();
    let vars = m as usize;
    (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (f, g) = (&gens[t / n], &gens[t % n]);
            let mut o = Outcome::default();
            if f.image_idem() != g.domain_idem() {
                return o;
            }
            match oracle::triangle_domain(f, g) {
                Err(err) => o.fail(format!(
                    "triangle domain broke down for f={}, g={}: {err}",
                    dump_gen(f),
                    dump_gen(g)
                )),
                Ok(None) => o.fail(format!(
                    "no composite despite matching idempotents: f={}, g={}",
                    dump_gen(f),
                    dump_gen(g)
                )),
                Ok(Some(domain)) => {
                    // Identity bundle inside `triangle_domain` held.
                    o.checks += 1;
                    o.check(domain.o_counts.iter().all(|&c| c >= 0), || {
                        format!(
                            "negative marked-point count {:?} for f={}, g={}",
                            domain.o_counts,
                            dump_gen(f),
                            dump_gen(g)
                        )
                    });
                    if domain.o_counts[0] == 0 && domain.o_counts[vars - 1] == 0 {
                        let h = f.then(g).expect("idempotents match");
                        let defect = f.maslov() + g.maslov() - h.maslov();
                        o.check(domain.diagonal_count == defect, || {
                            format!(
                                "triangle grading: diagonal count {} differs from \
                                 crossing defect {} for f={}, g={}",
                                domain.diagonal_count,
                                defect,
                                dump_gen(f),
                                dump_gen(g)
                            )
                        });
                    }
                }
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb)
}

/// Geometric differential against the combinatorial one, per generator.
fn oracle_diff_outcome(gens: &[LiftedPermutation]) -> Outcome {
    gens.par_iter()
        .map(|g| {
            let mut o = Outcome::default();
            let geometric = guard(
                &mut o,
                || format!("geometric differential of {}", dump_gen(g)),
                oracle::oracle_differential(g),
            );
            let combinatorial = guard(
                &mut o,
                || format!("combinatorial differential of {}", dump_gen(g)),
                Element::generator(g.clone()).diff(),
            );
            if let (Some(geo), Some(com)) = (geometric, combinatorial) {
                o.check(geo == com, || {
                    format!(
                        "differential mismatch for {}: geometric {} vs combinatorial {}",
                        dump_gen(g),
                        dump_element(&geo),
                        dump_element(&com)
                    )
                });
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb)
}

/// Geometric product against the combinatorial one, over every ordered pair
/// (non-composable pairs must agree on zero).
fn oracle_mul_outcome(gens: &[LiftedPermutation]) -> Outcome {
    let n = gens.len();
    (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (f, g) = (&gens[t / n], &gens[t % n]);
            let mut o = Outcome::default();
            let geometric = guard(
                &mut o,
                || format!("geometric product of f={}, g={}", dump_gen(f), dump_gen(g)),
                oracle::oracle_product(f, g),
            );
            let combinatorial = guard(
                &mut o,
                || {
                    format!(
                        "combinatorial product of f={}, g={}",
                        dump_gen(f),
                        dump_gen(g)
                    )
                },
                generator_product(f, g).map(|p| match p {
                    Some((h, mono)) => Element::term(h, mono.into()),
                    None => Element::zero(),
                }),
            );
            if let (Some(geo), Some(com)) = (geometric, combinatorial) {
                o.check(geo == com, || {
                    format!(
                        "product mismatch for f={}, g={}: geometric {} vs combinatorial {}",
                        dump_gen(f),
                        dump_gen(g),
                        dump_element(&geo),
                        dump_element(&com)
                    )
                });
            }
            o
        })
        .reduce(Outcome::default, Outcome::absorb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(Suite::parse(name).unwrap().name(), name);
        }
        assert!(Suite::parse("déjà-vu").is_none());
    }

    #[test]
    fn dga_suite_passes_on_a_small_table() {
        let report = run(Suite::Dga, 3, 1, 2, None).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.checks_run > 0);
        assert_eq!(report.suite, "dga");
    }

    #[test]
    fn asteroids_suite_passes_on_a_small_table() {
        let report = run(Suite::Asteroids, 3, 2, 3, None).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.checks_run > 0);
    }

    #[test]
    fn asteroids_suite_allows_single_width() {
        let report = run(Suite::Asteroids, 1, 1, 3, None).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn pong_suites_reject_single_width() {
        let err = run(Suite::Dga, 1, 1, 3, None).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn oracle_suites_pass_on_a_small_table() {
        let diff = run(Suite::OracleDiff, 3, 1, 2, None).unwrap();
        assert!(diff.passed(), "failures: {:?}", diff.failures);
        let mul = run(Suite::OracleMul, 2, 1, 2, None).unwrap();
        assert!(mul.passed(), "failures: {:?}", mul.failures);
    }

    #[test]
    fn order_and_euler_suites_pass_on_a_small_table() {
        let order = run(Suite::Order, 3, 1, 2, None).unwrap();
        assert!(order.passed(), "failures: {:?}", order.failures);
        let euler = run(Suite::Euler, 3, 1, 2, None).unwrap();
        assert!(euler.passed(), "failures: {:?}", euler.failures);
    }

    #[test]
    fn all_suite_merges_everything() {
        let report = run(Suite::All, 2, 1, 2, None).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        let dga_only = run(Suite::Dga, 2, 1, 2, None).unwrap();
        assert!(report.checks_run > dga_only.checks_run);
    }

    #[test]
    fn reports_are_deterministic_up_to_timing() {
        let strip = |mut r: VerificationReport| {
            r.wall_ms = 0;
            serde_json::to_string(&r).unwrap()
        };
        let a = strip(run(Suite::All, 3, 1, 1, None).unwrap());
        let b = strip(run(Suite::All, 3, 1, 1, None).unwrap());
        assert_eq!(a, b);
    }
}
