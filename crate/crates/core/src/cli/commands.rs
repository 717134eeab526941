use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Value};

use super::{Cli, Command, CoverCmd, CoverSource, FamilyArgs, LabCmd, Reading, SearchArgs, ZariskiCmd};
use crate::error::{Error, Result};
use crate::lab::filter::parse_range;
use crate::lab::{self, AvoiderOutcome, CoefficientReading, ExhaustionReason, FamilyK};
use crate::polybounded::{self, Cover, SearchBounds, Target};
use crate::polynomial::Coeff;
use crate::report::{Report, Status};
use crate::semigroup::analysis::{self, Boundedness, Fiber, ShiftReport};
use crate::semigroup::congruence::{quotient_by_congruence, Congruence, IdealSet};
use crate::semigroup::{Semigroup, Window};
use crate::verdict::{Scope, SearchOutcome, Verdict};
use crate::zariski;

use super::spec::parse_spec;

pub(super) fn dispatch(cli: &Cli, command: &str) -> Result<Report> {
    let ctx = Ctx { cli, command };
    match &cli.command {
        Command::Analyze { spec } => ctx.analyze(spec),
        Command::Cover(c) => ctx.cover(c),
        Command::Zariski(c) => ctx.zariski(c),
        Command::Lab(c) => ctx.lab(c),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    command: &'a str,
}

/// Comma-separated indices and ranges, e.g. `0..3,7,10..=12`.
fn parse_list(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut column = 1;
    for word in text.split(',') {
        let trimmed = word.trim();
        if !trimmed.is_empty() {
            let r = parse_range(trimmed)
                .ok_or_else(|| Error::parse(1, column, format!("expected an index or a range, found `{trimmed}`")))?;
            out.extend(r);
        }
        column += word.len() + 1;
    }
    Ok(out)
}

fn elements_of(s: &Semigroup, text: &str) -> Result<Vec<usize>> {
    let v = parse_list(text)?;
    if let Some(&x) = v.iter().find(|&&x| !s.contains_index(x)) {
        return Err(Error::IndexOutOfRange {
            index: x,
            order: s.order().unwrap_or(usize::MAX),
        });
    }
    Ok(v)
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Saturating counts as JSON numbers, or strings past `u64`.
fn big(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| Value::from(v.to_string()), Value::from)
}

fn cover_lines(c: &Cover) -> Value {
    c.to_text().lines().map(str::to_string).collect::<Vec<_>>().into()
}

fn fiber_json(f: &Fiber) -> Value {
    json!({"a": f.a, "b": f.b, "equation": f.side.as_str(), "size": f.size})
}

fn reading(r: Reading) -> CoefficientReading {
    match r {
        Reading::Words => CoefficientReading::Words,
        Reading::Letters => CoefficientReading::Letters,
    }
}

/// Sets `status`, `exhaustive` and `scope` or `counterexample` from a verdict.
fn apply_verdict(r: &mut Report, key: &str, v: &Verdict<usize>) {
    match v {
        Verdict::Verified(scope) => {
            r.set_status(Status::Verified);
            r.set_exhaustive(*scope == Scope::Exhaustive);
            r.set(key, json!({"result": "verified", "scope": scope.as_str()}));
        }
        Verdict::Counterexample(x) => {
            r.set_status(Status::Counterexample);
            r.set(key, json!({"result": "counterexample", "element": x}));
        }
    }
}

fn verdict_json(v: &Verdict<usize>) -> Value {
    match v {
        Verdict::Verified(scope) => json!({"result": "verified", "scope": scope.as_str()}),
        Verdict::Counterexample(x) => json!({"result": "counterexample", "element": x}),
    }
}

fn require_verified(w: &Window, c: &Cover) -> Result<()> {
    match polybounded::verify_cover(w, &Target::All, c)? {
        Verdict::Verified(_) => Ok(()),
        Verdict::Counterexample(x) => Err(Error::Unverified(format!("input cover misses element {x}"))),
    }
}

impl Ctx<'_> {
    fn window(&self, s: &Semigroup) -> Result<Window> {
        Window::clamped(s, self.cli.window)
    }

    fn start(&self, spec: &str) -> Result<(Semigroup, Window, Report)> {
        let s = parse_spec(spec)?;
        let w = self.window(&s)?;
        let r = Report::new(self.command, spec, Some(w.size()));
        Ok((s, w, r))
    }

    fn bounds(&self, s: &Semigroup, a: &SearchArgs) -> Result<SearchBounds> {
        let pool: Vec<usize> = parse_list(&a.coeffs)?
            .into_iter()
            .filter(|&x| s.contains_index(x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut b = SearchBounds::new(a.deg, pool, a.size);
        b.candidate_guard = self.cli.guards.max_candidates;
        b.node_guard = self.cli.guards.max_nodes;
        Ok(b)
    }

    fn load_cover(&self, s: &Semigroup, src: &CoverSource) -> Result<Cover> {
        match (&src.file, src.trivial) {
            (Some(path), _) => polybounded::parse_cover(s, &read(path)?),
            (None, true) => polybounded::trivial_finite_cover(s),
            (None, false) => Err(Error::Invalid("give --file or --trivial".into())),
        }
    }

    fn analyze(&self, spec: &str) -> Result<Report> {
        let (s, w, mut r) = self.start(spec)?;
        let limit = self.cli.guards.max_cubic_window;
        if w.size() > limit {
            return Err(Error::guard("analyze window", w.size() as u128, limit as u128));
        }
        r.set_exhaustive(w.is_full());
        r.set(
            "order",
            s.order()
                .map_or_else(|| Value::from(s.cardinality().to_string()), Value::from),
        );
        r.set("tags", s.tags().iter().map(|t| t.as_str()).collect::<Vec<_>>());
        r.set("group", s.has_tag(crate::semigroup::Tag::Group));
        let associative = analysis::check_associative(&w);
        r.set(
            "associative",
            match &associative {
                Verdict::Verified(sc) => json!({"value": true, "scope": sc.as_str()}),
                Verdict::Counterexample((a, b, c)) => json!({"value": false, "witness": [a, b, c]}),
            },
        );
        r.set(
            "cancellative",
            match analysis::is_cancellative(&w) {
                Verdict::Verified(sc) => json!({"value": true, "scope": sc.as_str()}),
                Verdict::Counterexample(cw) => json!({
                    "value": false,
                    "witness": {"a": cw.a.to_string(), "b": cw.b.to_string(), "x": cw.x, "y": cw.y},
                }),
            },
        );
        r.set(
            "finite_to_one_shifts",
            match analysis::has_finite_to_one_shifts(&w) {
                ShiftReport::Verified(sc) => json!({"verdict": "verified", "scope": sc.as_str()}),
                ShiftReport::WindowReport(f) => json!({"verdict": "unknown", "largest_fiber": fiber_json(&f)}),
                ShiftReport::Counterexample(f) => json!({"verdict": "counterexample", "largest_fiber": fiber_json(&f)}),
            },
        );
        r.set("idempotents", analysis::idempotents(&w));
        r.set("center", analysis::center(&w));
        let regular = analysis::regular_elements(&w);
        r.set(
            "regular",
            json!({"count": regular.len(), "witnesses": regular.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>()}),
        );
        r.set(
            "boundedness",
            match analysis::boundedness_exponent(&w) {
                Boundedness::Exponent(n) => json!({"bounded": true, "exponent": n, "scope": w.scope().as_str()}),
                Boundedness::NotBoundedWithin(cap) => json!({"bounded": false, "cap": cap}),
            },
        );
        r.set_status(if associative.is_verified() {
            Status::Verified
        } else {
            Status::Counterexample
        });
        Ok(r)
    }

    fn cover(&self, c: &CoverCmd) -> Result<Report> {
        match c {
            CoverCmd::Verify { spec, source, target } => {
                let (s, w, mut r) = self.start(spec)?;
                let cover = self.load_cover(&s, source)?;
                let target = match target {
                    Some(t) => Target::Set(elements_of(&s, t)?.into_iter().collect()),
                    None => Target::All,
                };
                let v = polybounded::verify_cover(&w, &target, &cover)?;
                r.set("pairs", cover.len());
                r.set("cover", cover_lines(&cover));
                apply_verdict(&mut r, "verdict", &v);
                Ok(r)
            }
            CoverCmd::Search { spec, search, target } => {
                let (s, w, mut r) = self.start(spec)?;
                let bounds = self.bounds(&s, search)?;
                let target = match target {
                    Some(t) => Target::Set(elements_of(&s, t)?.into_iter().collect()),
                    None => Target::All,
                };
                r.set(
                    "bounds",
                    json!({"degree": bounds.degree, "pool": bounds.pool, "size": bounds.size}),
                );
                let res = polybounded::search_cover(&w, &target, &bounds)?;
                r.set(
                    "stats",
                    json!({
                        "polynomials": big(res.stats.polynomials),
                        "functions": res.stats.functions,
                        "pairs": res.stats.pairs,
                        "nodes": res.stats.nodes,
                    }),
                );
                match res.outcome {
                    SearchOutcome::Found(cover) => {
                        r.set("outcome", "found");
                        r.set("cover", cover_lines(&cover));
                        let v = polybounded::verify_cover(&w, &target, &cover)?;
                        apply_verdict(&mut r, "verdict", &v);
                    }
                    SearchOutcome::NoneWithinBounds => {
                        r.set("outcome", "none-within-bounds");
                        r.set_exhaustive(w.is_full());
                        r.set_status(Status::Inconclusive);
                    }
                }
                Ok(r)
            }
            CoverCmd::Prune { spec, source } | CoverCmd::Regularize { spec, source } => {
                let (s, w, mut r) = self.start(spec)?;
                let input = self.load_cover(&s, source)?;
                require_verified(&w, &input)?;
                let out = if matches!(c, CoverCmd::Prune { .. }) {
                    polybounded::prune_cover(&input, &w)?
                } else {
                    polybounded::regularize_cover(&polybounded::prune_cover(&input, &w)?, &w)?
                };
                r.set("input", cover_lines(&input));
                r.set("cover", cover_lines(&out));
                r.set("pruned", out.polys().iter().all(|f| f.is_pruned()));
                let v = polybounded::verify_cover(&w, &Target::All, &out)?;
                apply_verdict(&mut r, "verdict", &v);
                Ok(r)
            }
            CoverCmd::Transport {
                spec,
                source,
                congruence,
                ideal,
                identify,
            } => {
                let (s, _, mut r) = self.start(spec)?;
                let cover = self.load_cover(&s, source)?;
                let cong = match (congruence, ideal, identify) {
                    (Some(path), _, _) => {
                        let classes: Vec<Vec<usize>> = read(path)?
                            .lines()
                            .map(|l| l.split('#').next().unwrap_or(""))
                            .filter(|l| !l.trim().is_empty())
                            .map(|l| elements_of(&s, &l.split_whitespace().collect::<Vec<_>>().join(",")))
                            .collect::<Result<_>>()?;
                        Congruence::from_classes(&s, &classes)?
                    }
                    (None, Some(list), _) => IdealSet::new(&s, elements_of(&s, list)?)?.rees_congruence()?,
                    (None, None, Some(pairs)) => {
                        let mut ps = Vec::new();
                        for p in pairs.split(',').filter(|p| !p.trim().is_empty()) {
                            let (a, b) = p
                                .split_once(':')
                                .ok_or_else(|| Error::Invalid(format!("expected `a:b`, found `{p}`")))?;
                            let a = elements_of(&s, a.trim())?;
                            let b = elements_of(&s, b.trim())?;
                            if a.len() != 1 || b.len() != 1 {
                                return Err(Error::Invalid(format!("expected `a:b`, found `{p}`")));
                            }
                            ps.push((a[0], b[0]));
                        }
                        Congruence::generated(&s, &ps)?
                    }
                    (None, None, None) => {
                        return Err(Error::Invalid("give --congruence, --ideal or --identify".into()))
                    }
                };
                let (target, q) = quotient_by_congruence(&cong)?;
                let out = polybounded::transport_quotient(&cover, &target, &q)?;
                let k = target.order().unwrap_or(0);
                r.set("quotient_order", k);
                r.set("map", q.clone());
                let rows: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| target.mul(a, b)).collect()).collect();
                r.set("quotient_table", json!(rows));
                r.set("cover", cover_lines(&out));
                let v = polybounded::verify_cover(&Window::full(&target)?, &Target::All, &out)?;
                apply_verdict(&mut r, "verdict", &v);
                Ok(r)
            }
            CoverCmd::Product {
                left,
                right,
                left_file,
                right_file,
                trivial,
            } => {
                let a = parse_spec(left)?;
                let b = parse_spec(right)?;
                let load = |s: &Semigroup, f: &Option<std::path::PathBuf>| {
                    self.load_cover(
                        s,
                        &CoverSource {
                            file: f.clone(),
                            trivial: *trivial,
                        },
                    )
                };
                let cx = load(&a, left_file)?;
                let cy = load(&b, right_file)?;
                let p = Semigroup::product(&a, &b);
                let w = self.window(&p)?;
                let mut r = Report::new(self.command, &format!("product({left},{right})"), Some(w.size()));
                let out = polybounded::product_cover(&p, &cx, &cy, self.cli.window)?;
                let degree = |c: &Cover| c.polys().iter().map(|f| f.degree()).max().unwrap_or(0);
                r.set("left_degree", degree(&cx));
                r.set("right_degree", degree(&cy));
                r.set(
                    "pair_degrees",
                    out.pairs().iter().map(|(f, _)| f.degree()).collect::<Vec<_>>(),
                );
                r.set("cover", cover_lines(&out));
                let v = polybounded::verify_cover(&w, &Target::All, &out)?;
                apply_verdict(&mut r, "verdict", &v);
                Ok(r)
            }
            CoverCmd::GroupExtract { spec, source } => {
                let (s, w, mut r) = self.start(spec)?;
                let cover = self.load_cover(&s, source)?;
                let g = polybounded::group_from_cover(&w, &cover)?;
                r.set("identity", g.identity);
                r.set(
                    "inverses",
                    g.inverse.iter().map(|(&x, &y)| json!([x, y])).collect::<Vec<_>>(),
                );
                r.set_status(Status::Verified);
                r.set_exhaustive(w.is_full());
                r.set("scope", w.scope().as_str());
                Ok(r)
            }
            CoverCmd::NormalizeGroup { spec, source } => {
                let (s, w, mut r) = self.start(spec)?;
                let cover = self.load_cover(&s, source)?;
                let out = polybounded::normalize_group_cover(&w, &cover)?;
                r.set("input", cover_lines(&cover));
                r.set("cover", cover_lines(&out));
                let v = polybounded::verify_cover(&w, &Target::All, &out)?;
                apply_verdict(&mut r, "verdict", &v);
                Ok(r)
            }
            CoverCmd::CenterBound { spec, source } => {
                let (s, w, mut r) = self.start(spec)?;
                let cover = self.load_cover(&s, source)?;
                let cb = polybounded::center_bound_check(&w, &cover)?;
                r.set("center", cb.center.clone());
                r.set("p", cb.p);
                r.set("fiber", cb.fiber.clone());
                r.set("bound", cb.bound);
                r.set(
                    "witnesses",
                    cb.witnesses
                        .iter()
                        .map(|z| json!([z.z, z.m, z.m_prime]))
                        .collect::<Vec<_>>(),
                );
                r.set("cover_verdict", verdict_json(&cb.cover_verdict));
                apply_verdict(&mut r, "verdict", &cb.verdict);
                Ok(r)
            }
        }
    }

    fn zariski(&self, c: &ZariskiCmd) -> Result<Report> {
        match c {
            ZariskiCmd::Isolate { spec, point, search } => {
                let (s, w, mut r) = self.start(spec)?;
                if !w.contains(*point) {
                    return Err(Error::Invalid(format!("point {point} is outside the window")));
                }
                let bounds = self.bounds(&s, search)?;
                r.set("point", *point);
                r.set(
                    "bounds",
                    json!({"degree": bounds.degree, "pool": bounds.pool, "size": bounds.size}),
                );
                let res = zariski::search_isolation(&w, *point, &bounds)?;
                r.set(
                    "stats",
                    json!({"polynomials": big(res.stats.polynomials), "pairs": res.stats.pairs, "nodes": res.stats.nodes}),
                );
                match res.outcome {
                    SearchOutcome::Found(cert) => {
                        r.set("outcome", "found");
                        r.set(
                            "certificate",
                            cert.to_text().lines().map(str::to_string).collect::<Vec<_>>(),
                        );
                        let cover = zariski::isolation_to_cover(&w, &cert)?;
                        r.set("round_trip_cover", cover_lines(&cover));
                        r.set(
                            "round_trip",
                            verdict_json(&polybounded::verify_cover(&w, &Target::All, &cover)?),
                        );
                        apply_verdict(&mut r, "verdict", &zariski::verify_isolation(&w, &cert)?);
                    }
                    SearchOutcome::NoneWithinBounds => {
                        r.set("outcome", "none-within-bounds");
                        r.set_exhaustive(w.is_full());
                        r.set_status(Status::Inconclusive);
                    }
                }
                Ok(r)
            }
            ZariskiCmd::Report { spec, search } => {
                let (s, w, mut r) = self.start(spec)?;
                let bounds = self.bounds(&s, search)?;
                let dr = zariski::discreteness_report(&w, &bounds)?;
                let mut points = Vec::with_capacity(dr.points.len());
                let mut all_verified = true;
                for p in &dr.points {
                    let entry = match &p.certificate {
                        Some(cert) => {
                            let v = zariski::verify_isolation(&w, cert)?;
                            let cover = zariski::isolation_to_cover(&w, cert)?;
                            let rt = polybounded::verify_cover(&w, &Target::All, &cover)?;
                            all_verified &= v.is_verified() && rt.is_verified();
                            json!({
                                "point": p.point,
                                "isolated": true,
                                "certificate": cert.pairs().iter().map(|(f, b)| format!("{f} = {b}")).collect::<Vec<_>>(),
                                "verdict": verdict_json(&v),
                                "round_trip": verdict_json(&rt),
                            })
                        }
                        None => json!({"point": p.point, "isolated": null}),
                    };
                    points.push(entry);
                }
                r.set("all_isolated", dr.all_isolated);
                r.set("scope", dr.scope.as_str());
                r.set("note", dr.note.clone());
                r.set("points", points);
                if !all_verified {
                    r.set_status(Status::Counterexample);
                } else if dr.all_isolated {
                    r.set_status(Status::Verified);
                    r.set_exhaustive(dr.scope == Scope::Exhaustive);
                } else {
                    r.set_status(Status::Inconclusive);
                }
                Ok(r)
            }
            ZariskiCmd::Verify { spec, file } => {
                let (s, w, mut r) = self.start(spec)?;
                let cert = zariski::parse_certificate(&s, &read(file)?)?;
                r.set("point", cert.point());
                r.set("pairs", cert.pairs().len());
                apply_verdict(&mut r, "verdict", &zariski::verify_isolation(&w, &cert)?);
                Ok(r)
            }
        }
    }

    fn family(&self, s: &Semigroup, w: &Window, a: &FamilyArgs, r: &mut Report) -> Result<FamilyK> {
        let base = match (a.from_avoider, &a.base_set) {
            (Some(steps), _) => {
                let outcome = lab::build_avoider_sequence(w, steps, reading(a.reading))?;
                let seq = outcome.sequence();
                r.set("avoider_complete", matches!(outcome, AvoiderOutcome::Complete(_)));
                seq.elements.clone()
            }
            (None, Some(list)) => elements_of(s, list)?,
            (None, None) => return Err(Error::Invalid("give --from-avoider or --base-set".into())),
        };
        let pool: Vec<usize> = parse_list(&a.pool)?
            .into_iter()
            .filter(|&x| s.contains_index(x))
            .collect();
        let k = lab::gen_family_k(s, &base, &pool, a.blocks, a.max_entries)?;
        r.set("base", k.base.clone());
        r.set("pool", k.pool.clone());
        r.set("blocks", k.max_blocks);
        r.set("entries", k.len());
        Ok(k)
    }

    fn lab(&self, c: &LabCmd) -> Result<Report> {
        match c {
            LabCmd::Avoider {
                spec,
                steps,
                reading: rd,
            } => {
                let (_, w, mut r) = self.start(spec)?;
                let outcome = lab::build_avoider_sequence(&w, *steps, reading(*rd))?;
                let seq = outcome.sequence();
                r.set("reading", seq.reading.as_str());
                r.set("steps", *steps);
                let (kind, status) = match &outcome {
                    AvoiderOutcome::Complete(_) => (json!({"kind": "complete"}), Status::Verified),
                    AvoiderOutcome::PolyboundedObstruction { step, exhausted, .. } => (
                        json!({"kind": "polybounded-obstruction", "step": step, "exhausted": exhausted}),
                        Status::Counterexample,
                    ),
                    AvoiderOutcome::WindowExhausted { step, reason, .. } => (
                        json!({
                            "kind": "window-exhausted",
                            "step": step,
                            "reason": match reason {
                                ExhaustionReason::TooFewElements => "too-few-elements",
                                ExhaustionReason::NoCandidateInWindow => "no-candidate-in-window",
                            },
                        }),
                        Status::Inconclusive,
                    ),
                };
                r.set("outcome", kind);
                r.set("elements", seq.elements.clone());
                r.set(
                    "log",
                    seq.logs
                        .iter()
                        .map(|l| {
                            json!({
                                "step": l.step,
                                "element": l.element,
                                "letters": l.letters,
                                "coefficient_values": l.coefficient_values,
                                "polynomials": big(l.polynomials),
                                "rejected": l.rejected,
                            })
                        })
                        .collect::<Vec<_>>(),
                );
                let rv = lab::verify_avoider(seq)?;
                r.set("reverification", verdict_json(&rv));
                r.set_status(if rv.is_verified() {
                    status
                } else {
                    Status::Counterexample
                });
                Ok(r)
            }
            LabCmd::Family { spec, family } => {
                let (s, w, mut r) = self.start(spec)?;
                let k = self.family(&s, &w, family, &mut r)?;
                r.set(
                    "family",
                    k.entries
                        .iter()
                        .map(|e| {
                            let tuple: Vec<String> = e.tuple.iter().map(|c| c.to_string()).collect();
                            json!({"tuple": tuple.join(" A "), "in_window": e.in_window(&w).len()})
                        })
                        .collect::<Vec<_>>(),
                );
                r.set("union_in_window", k.union_in_window(&w).len());
                r.set_status(Status::Verified);
                Ok(r)
            }
            LabCmd::L0Check {
                spec,
                family,
                fiber_bound,
            } => {
                let (s, w, mut r) = self.start(spec)?;
                let k = self.family(&s, &w, family, &mut r)?;
                let l0 = lab::check_l0_conditions(&k, &w, *fiber_bound)?;
                let closure = |c: &lab::family::ClosureReport| {
                    json!({
                        "holds": c.holds(),
                        "checked": c.checked,
                        "by_tuple": c.by_tuple,
                        "by_inclusion": c.by_inclusion,
                        "beyond_bounds": c.beyond_bounds,
                        "unwitnessed": c.unwitnessed.len(),
                        "first_unwitnessed": c.unwitnessed.iter().take(10).collect::<Vec<_>>(),
                    })
                };
                let fiber = |f: &lab::family::FiberReport| json!({"holds": f.holds(), "largest": f.largest, "at": f.at, "bound": f.bound});
                r.set("condition1_products", closure(&l0.products));
                r.set("condition2_shifts", closure(&l0.shifts));
                r.set("condition3_shift_fibers", fiber(&l0.shift_fibers));
                r.set("condition4_pair_fibers", fiber(&l0.pair_fibers));
                r.set("pair_projection", l0.pair_projection.clone());
                r.set_status(if l0.holds() {
                    Status::Verified
                } else {
                    Status::Counterexample
                });
                Ok(r)
            }
            LabCmd::Tau0 {
                spec,
                family,
                exclude,
                threshold,
            } => {
                let (s, w, mut r) = self.start(spec)?;
                let k = self.family(&s, &w, family, &mut r)?;
                let holes: BTreeSet<usize> = elements_of(&s, exclude)?.into_iter().collect();
                let v: BTreeSet<usize> = w.elements().filter(|x| !holes.contains(x)).collect();
                let oracle = lab::TauZeroOracle::new(k, w.clone(), *threshold)?;
                let ans = oracle.is_neighborhood(&v);
                r.set("excluded", holes.into_iter().collect::<Vec<_>>());
                r.set("threshold", ans.threshold);
                r.set("neighborhood", ans.neighborhood);
                r.set("deficits", ans.deficits.clone());
                r.set_status(if ans.neighborhood {
                    Status::Verified
                } else {
                    Status::Counterexample
                });
                Ok(r)
            }
            LabCmd::Filter {
                spec,
                base,
                scenario,
                shifts,
                iterate,
                threshold,
                seed,
            } => {
                let (s, w, mut r) = self.start(spec)?;
                let t = threshold.unwrap_or_else(|| lab::default_threshold(w.size()));
                let f = match scenario {
                    Some(path) => lab::parse_scenario(&w, &read(path)?)?,
                    None => match base.split_once(':') {
                        None if base == "cofinite" => lab::cofinite_blocks_base(&w, t)?,
                        Some(("random", n)) => {
                            let n: usize = n.parse().map_err(|_| Error::Invalid(format!("bad base `{base}`")))?;
                            lab::random_cofinite_base(&w, n, t, *seed)?
                        }
                        Some(("singleton", x)) => {
                            let x: usize = x.parse().map_err(|_| Error::Invalid(format!("bad base `{base}`")))?;
                            lab::principal_base(&w, x)?
                        }
                        _ => return Err(Error::Invalid(format!("unknown base `{base}`"))),
                    },
                };
                let shifts = self.shifts(&s, shifts, *iterate)?;
                r.set("threshold", t);
                r.set("base_sets", f.len());
                r.set("max_deficit", f.deficits().into_iter().max().unwrap_or(0));
                r.set("shifts", shifts.iter().map(|c| c.to_string()).collect::<Vec<_>>());
                let class = lab::t1_witness_check(&f, &shifts)?;
                let pair = match class.intersection.as_slice() {
                    [u, v, ..] => Some((*u, *v)),
                    _ => None,
                };
                r.set("free_on_window", class.free_on_window);
                r.set("principal_on_window", class.principal_on_window);
                r.set("neither", class.neither());
                r.set("intersection_size", class.intersection.len());
                r.set(
                    "intersection",
                    class.intersection.iter().take(50).copied().collect::<Vec<_>>(),
                );
                r.set("smallest_set", class.smallest_set);
                r.set("witness_pair", pair.map_or(Value::Null, |(u, v)| json!([u, v])));
                r.set_status(if pair.is_some() || class.neither() {
                    Status::Verified
                } else {
                    Status::Inconclusive
                });
                Ok(r)
            }
        }
    }

    /// `none` means identity shifts around `iterate + 1` filter factors.
    fn shifts(&self, s: &Semigroup, text: &str, iterate: Option<usize>) -> Result<Vec<Coeff>> {
        if text == "none" {
            return Ok(vec![Coeff::One; iterate.unwrap_or(1) + 2]);
        }
        let mut out = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            let c = if tok == "id" {
                Coeff::One
            } else {
                let x: usize = tok.parse().map_err(|_| Error::Invalid(format!("bad shift `{tok}`")))?;
                Coeff::Elem(x)
            };
            s.validate_coeff(&c)?;
            out.push(c);
        }
        if let Some(k) = iterate {
            if out.len() != k + 2 {
                return Err(Error::Invalid(format!(
                    "--iterate {k} needs {} shifts, found {}",
                    k + 2,
                    out.len()
                )));
            }
        }
        Ok(out)
    }
}
