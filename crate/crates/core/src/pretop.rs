//! Pretopologies given by formal sequences, and the passage to topologies.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::lincat::{all_vectors, FinLinearCategory, FormalMorphism, FormalSequence, Morphism, Obj};
use crate::presheaf::{cokernel, homology, Presheaf, PresheafMap};
use crate::sheafify::sheafify;
use crate::sieve::{generated_sieve, pullback_sieve, Sieve};
use crate::topology::{axiom_check, generated_topology, Topology};

pub const DEFAULT_SEARCH_DEPTH: usize = 3;
const COMBINATION_CAP: usize = 4096;
const MORPHISM_CAP: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pretopology {
    pub sequences: Vec<FormalSequence>,
    pub search_depth: usize,
}

impl Pretopology {
    pub fn new(sequences: Vec<FormalSequence>) -> Pretopology {
        Pretopology { sequences, search_depth: DEFAULT_SEARCH_DEPTH }
    }

    pub fn empty() -> Pretopology {
        Pretopology::new(Vec::new())
    }

    pub fn union(&self, other: &Pretopology) -> Pretopology {
        let mut sequences = self.sequences.clone();
        sequences.extend(other.sequences.iter().filter(|s| !self.sequences.contains(s)).cloned());
        Pretopology { sequences, search_depth: self.search_depth.max(other.search_depth) }
    }

    pub fn to_json(&self, c: &FinLinearCategory) -> Value {
        let coords = |m: &Morphism| Value::Array(m.coords.iter().map(Scalar::to_json).collect());
        let labels = |v: &[Obj]| Value::Array(v.iter().map(|&a| json!(c.label(a))).collect());
        let seqs: Vec<Value> = self
            .sequences
            .iter()
            .map(|s| {
                json!({
                    "target": c.label(s.target),
                    "middle": labels(&s.middle),
                    "left": labels(&s.left),
                    "q": s.q.iter().map(coords).collect::<Vec<_>>(),
                    "p": s.p.iter().map(|row| row.iter().map(coords).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"sequences": seqs, "searchDepth": self.search_depth})
    }

    pub fn from_json(c: &FinLinearCategory, v: &Value) -> Result<Pretopology> {
        let seqs = v.get("sequences").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing sequences".into()))?;
        let search_depth = match v.get("searchDepth") {
            None => DEFAULT_SEARCH_DEPTH,
            Some(d) => d.as_u64().ok_or_else(|| Error::Parse("searchDepth must be a count".into()))? as usize,
        };
        let sequences = seqs.iter().map(|s| sequence_from_json(c, s)).collect::<Result<_>>()?;
        Ok(Pretopology { sequences, search_depth })
    }
}

fn sequence_from_json(c: &FinLinearCategory, v: &Value) -> Result<FormalSequence> {
    let field = c.field();
    let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("sequence is missing {k}")));
    let objs = |k: &str| -> Result<Vec<Obj>> {
        get(k)?
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{k} must be a list of objects")))?
            .iter()
            .map(|x| c.obj(x.as_str().ok_or_else(|| Error::Parse(format!("{k} entries must be labels")))?))
            .collect()
    };
    let coords = |x: &Value| -> Result<Vec<Scalar>> {
        x.as_array().ok_or_else(|| Error::Parse("coordinates must be an array".into()))?.iter().map(|s| field.parse_json(s)).collect()
    };
    let target = c.obj(get("target")?.as_str().ok_or_else(|| Error::Parse("target must be a label".into()))?)?;
    let (middle, left) = (objs("middle")?, objs("left")?);
    let qs = get("q")?.as_array().ok_or_else(|| Error::Parse("q must be a list".into()))?;
    if qs.len() != middle.len() {
        return Err(Error::Shape("q needs one entry per middle summand".into()));
    }
    let q = qs.iter().zip(&middle).map(|(x, &y)| c.morphism(y, target, coords(x)?)).collect::<Result<Vec<_>>>()?;
    let ps = get("p")?.as_array().ok_or_else(|| Error::Parse("p must be a list".into()))?;
    if ps.len() != left.len() {
        return Err(Error::Shape("p needs one row per left summand".into()));
    }
    let p = ps
        .iter()
        .zip(&left)
        .map(|(row, &z)| {
            let row = row.as_array().ok_or_else(|| Error::Parse("p rows must be lists".into()))?;
            if row.len() != middle.len() {
                return Err(Error::Shape("p rows need one entry per middle summand".into()));
            }
            row.iter().zip(&middle).map(|(x, &y)| c.morphism(z, y, coords(x)?)).collect()
        })
        .collect::<Result<Vec<Vec<Morphism>>>>()?;
    FormalSequence::new(c, q, target, p, left)
}

/// `0 -> X --x_α--> ... ` : the sequence `⊕_{α≠β} X -> ⊕_α X -> X` of commuting endomorphisms.
pub fn gabriel_sequence(c: &FinLinearCategory, xs: &[Morphism]) -> Result<FormalSequence> {
    let x = xs.first().ok_or_else(|| Error::Shape("need at least one element".into()))?.tgt;
    if xs.iter().any(|m| m.src != x || m.tgt != x) {
        return Err(Error::Shape("elements must be endomorphisms of one object".into()));
    }
    let mut p = Vec::new();
    for a in 0..xs.len() {
        for b in 0..xs.len() {
            if a == b {
                continue;
            }
            let mut row = vec![c.zero(x, x); xs.len()];
            row[a] = xs[b].clone();
            row[b] = xs[a].neg();
            p.push(row);
        }
    }
    let left = vec![x; p.len()];
    FormalSequence::new(c, xs.to_vec(), x, p, left)
}

/// `R_q`: the sieve generated by the legs of `q`.
pub fn cover_sieve(c: &FinLinearCategory, s: &FormalSequence) -> Result<Sieve> {
    generated_sieve(c, s.target, &s.q)
}

/// Sieves `R_r` of composite covers, kept as antichains of minimal ones.
#[derive(Clone, Debug)]
pub struct CoverSearch {
    /// `levels[i][a]`: minimal sieves of depth-`i` composites on `a`.
    pub levels: Vec<Vec<Vec<Sieve>>>,
    /// The levels reached a fixed point, so deeper composites add nothing.
    pub exhausted: bool,
    pub truncated: bool,
}

fn push_minimal(set: &mut Vec<Sieve>, s: Sieve) -> Result<()> {
    for t in set.iter() {
        if s.contains(t)? {
            return Ok(());
        }
    }
    let mut keep = Vec::with_capacity(set.len() + 1);
    for t in set.drain(..) {
        if !t.contains(&s)? {
            keep.push(t);
        }
    }
    keep.push(s);
    *set = keep;
    Ok(())
}

fn same_antichain(a: &[Sieve], b: &[Sieve]) -> bool {
    a.len() == b.len() && a.iter().all(|s| b.contains(s))
}

impl CoverSearch {
    pub fn new(c: &FinLinearCategory, s: &Pretopology) -> Result<CoverSearch> {
        let mut levels = vec![c.objs().map(|a| vec![Sieve::maximal(c, a)]).collect::<Vec<_>>()];
        let mut truncated = false;
        let mut exhausted = false;
        for _ in 0..s.search_depth {
            let prev = levels.last().expect("level zero exists");
            let mut next: Vec<Vec<Sieve>> = vec![Vec::new(); c.num_objects()];
            for seq in &s.sequences {
                let choices: Vec<&Vec<Sieve>> = seq.middle.iter().map(|&y| &prev[y]).collect();
                if choices.iter().any(|v| v.is_empty()) {
                    continue;
                }
                let total = choices.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.len()));
                if total.map_or(true, |t| t > COMBINATION_CAP) {
                    truncated = true;
                }
                let mut idx = vec![0usize; choices.len()];
                for _ in 0..total.unwrap_or(usize::MAX).min(COMBINATION_CAP) {
                    let mut gens = Vec::new();
                    for (b, &i) in idx.iter().enumerate() {
                        for g in choices[b][i].generators(c) {
                            gens.push(c.compose(&seq.q[b], &g)?);
                        }
                    }
                    push_minimal(&mut next[seq.target], generated_sieve(c, seq.target, &gens)?)?;
                    for (b, i) in idx.iter_mut().enumerate() {
                        *i += 1;
                        if *i < choices[b].len() {
                            break;
                        }
                        *i = 0;
                    }
                }
            }
            let done = levels.len() > 1 && next.iter().zip(prev).all(|(a, b)| same_antichain(a, b));
            levels.push(next);
            if done {
                exhausted = !truncated;
                break;
            }
        }
        Ok(CoverSearch { levels, exhausted, truncated })
    }

    /// Shallowest composite on `a` whose sieve lies inside `target`.
    pub fn find(&self, a: Obj, target: &Sieve) -> Result<Option<(usize, Sieve)>> {
        for (depth, level) in self.levels.iter().enumerate() {
            for s in &level[a] {
                if target.contains(s)? {
                    return Ok(Some((depth, s.clone())));
                }
            }
        }
        Ok(None)
    }

    /// Minimal sieves over all depths on `a`.
    pub fn minimal(&self, a: Obj) -> Result<Vec<Sieve>> {
        let mut out = Vec::new();
        for level in &self.levels {
            for s in &level[a] {
                push_minimal(&mut out, s.clone())?;
            }
        }
        Ok(out)
    }
}

/// Three-valued outcome of an existence check over composite covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified { depth: usize },
    Unknown { reason: String },
    Violated { sequence: usize, object: Obj, detail: String },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified { .. })
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Verified { .. } => "Verified",
            Verdict::Unknown { .. } => "Unknown",
            Verdict::Violated { .. } => "Violated",
        }
    }

    pub fn to_json(&self, c: &FinLinearCategory) -> Value {
        match self {
            Verdict::Verified { depth } => json!({"status": "Verified", "depth": depth}),
            Verdict::Unknown { reason } => json!({"status": "Unknown", "reason": reason}),
            Verdict::Violated { sequence, object, detail } => {
                json!({"status": "Violated", "sequence": sequence, "object": c.label(*object), "detail": detail})
            }
        }
    }

    fn merge(self, other: Verdict) -> Verdict {
        match (self, other) {
            (v @ Verdict::Violated { .. }, _) | (_, v @ Verdict::Violated { .. }) => v,
            (v @ Verdict::Unknown { .. }, _) | (_, v @ Verdict::Unknown { .. }) => v,
            (Verdict::Verified { depth: a }, Verdict::Verified { depth: b }) => Verdict::Verified { depth: a.max(b) },
        }
    }
}

/// Decides one obligation "some composite sieve on `a` lies in `target(f)`".
///
/// `targets` holds the sieves for a spanning set of the `f` to check; since
/// `target` only grows under sums of `f`, their intersection is a uniform
/// target. When that fails, every `f` is tried over a finite field.
struct Obligation<'a> {
    search: &'a CoverSearch,
    generated: &'a Topology,
    sequence: usize,
    object: Obj,
}

impl Obligation<'_> {
    fn decide(&self, c: &FinLinearCategory, basis_targets: Vec<Sieve>, all_targets: impl FnOnce() -> Result<Option<Vec<Sieve>>>) -> Result<Verdict> {
        let a = self.object;
        let mut uniform = Sieve::maximal(c, a);
        for t in &basis_targets {
            uniform = uniform.intersect(t)?;
        }
        if let Some((depth, _)) = self.search.find(a, &uniform)? {
            return Ok(Verdict::Verified { depth });
        }
        let targets = match all_targets()? {
            Some(all) => all,
            None => basis_targets,
        };
        let mut depth = 0;
        let mut missing = None;
        for t in &targets {
            if !t.contains(self.generated.min_sieve(a))? {
                return Ok(self.violated("no composite cover can lie in the required sieve"));
            }
            match self.search.find(a, t)? {
                Some((d, _)) => depth = depth.max(d),
                None => missing = Some(t.clone()),
            }
        }
        match missing {
            None => Ok(Verdict::Verified { depth }),
            Some(_) if self.search.exhausted => Ok(self.violated("composite covers are exhausted without a witness")),
            Some(_) => Ok(Verdict::Unknown { reason: format!("no witness on {} within the search depth", c.label(a)) }),
        }
    }

    fn violated(&self, detail: &str) -> Verdict {
        Verdict::Violated { sequence: self.sequence, object: self.object, detail: detail.into() }
    }
}

fn finite_span(c: &FinLinearCategory, n: usize) -> Option<Vec<Vec<Scalar>>> {
    let q = c.field().order()?;
    if (q as f64).powi(n as i32) > MORPHISM_CAP as f64 {
        return None;
    }
    all_vectors(c.field(), n).ok()
}

fn seed_sieves(c: &FinLinearCategory, s: &Pretopology) -> Result<Vec<Sieve>> {
    s.sequences.iter().map(|q| cover_sieve(c, q)).collect()
}

/// Pullback stability of the covers up to composites.
pub fn check_pta(c: &FinLinearCategory, s: &Pretopology) -> Result<Verdict> {
    let search = CoverSearch::new(c, s)?;
    let generated = generated_topology(c, &seed_sieves(c, s)?)?;
    let mut verdict = Verdict::Verified { depth: 0 };
    for (i, seq) in s.sequences.iter().enumerate() {
        let r = cover_sieve(c, seq)?;
        for a in c.objs() {
            let ob = Obligation { search: &search, generated: &generated, sequence: i, object: a };
            let basis = c.basis_morphisms(a, seq.target).iter().map(|f| pullback_sieve(c, &r, f)).collect::<Result<Vec<_>>>()?;
            let v = ob.decide(c, basis, || {
                finite_span(c, c.hom_dim(a, seq.target))
                    .map(|vs| vs.into_iter().map(|v| pullback_sieve(c, &r, &Morphism { src: a, tgt: seq.target, coords: v })).collect())
                    .transpose()
            })?;
            verdict = verdict.merge(v);
            if verdict.is_violated() {
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

/// `⊕ hom(A, Z_γ) -> ⊕ hom(A, Y_β) -> hom(A, X)` is exact at every `A`.
pub fn strong_exactness(c: &FinLinearCategory, seq: &FormalSequence) -> Result<bool> {
    let (q, p) = (seq.q_formal(c)?, seq.p_formal()?);
    for a in c.objs() {
        let ker = Subspace::span(&q.post_matrix(c, a).kernel());
        let im = Subspace::span(&p.post_matrix(c, a));
        if ker != im {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtbReport {
    /// Every sequence satisfies the pointwise exactness form.
    pub strong_form: bool,
    pub verdict: Verdict,
}

/// Cuts a column of `⊕ hom(a, Y_β)` into its components.
fn split_column(c: &FinLinearCategory, a: Obj, middle: &[Obj], v: &[Scalar]) -> Result<Vec<Morphism>> {
    let mut off = 0;
    middle
        .iter()
        .map(|&y| {
            let n = c.hom_dim(a, y);
            off += n;
            c.morphism(a, y, v[off - n..off].to_vec())
        })
        .collect()
}

/// `{g : f ∘ g ∈ im(p ∘ -)}` for `f: A -> ⊕ Y_β`, given as a column in block form.
fn lifting_sieve(c: &FinLinearCategory, seq: &FormalSequence, a: Obj, f: &[Scalar]) -> Result<Sieve> {
    let fm = FormalMorphism::new(vec![a], seq.middle.clone(), vec![split_column(c, a, &seq.middle, f)?])?;
    let p = seq.p_formal()?;
    let spans = c
        .objs()
        .map(|w| Subspace::span(&p.post_matrix(c, w)).preimage(&fm.post_matrix(c, w)))
        .collect::<Result<Vec<_>>>()?;
    Sieve::from_spans(c, a, spans)
}

/// Sieve on `a` that a composite cover must lie in for the pullback condition on `seq`.
pub fn pta_target(c: &FinLinearCategory, seq: &FormalSequence, a: Obj) -> Result<Sieve> {
    let r = cover_sieve(c, seq)?;
    let mut out = Sieve::maximal(c, a);
    for f in c.basis_morphisms(a, seq.target) {
        out = out.intersect(&pullback_sieve(c, &r, &f)?)?;
    }
    Ok(out)
}

/// Sieve on `a` that a composite cover must lie in for the lifting condition on `seq`.
pub fn ptb_target(c: &FinLinearCategory, seq: &FormalSequence, a: Obj) -> Result<Sieve> {
    let mut out = Sieve::maximal(c, a);
    for f in seq.q_formal(c)?.post_matrix(c, a).kernel().columns() {
        out = out.intersect(&lifting_sieve(c, seq, a, &f)?)?;
    }
    Ok(out)
}

/// Local lifting of elements killed by `q`, up to composites.
pub fn check_ptb(c: &FinLinearCategory, s: &Pretopology) -> Result<PtbReport> {
    let mut strong = true;
    for seq in &s.sequences {
        strong &= strong_exactness(c, seq)?;
    }
    if strong {
        return Ok(PtbReport { strong_form: true, verdict: Verdict::Verified { depth: 0 } });
    }
    let search = CoverSearch::new(c, s)?;
    let generated = generated_topology(c, &seed_sieves(c, s)?)?;
    let mut verdict = Verdict::Verified { depth: 0 };
    for (i, seq) in s.sequences.iter().enumerate() {
        let q = seq.q_formal(c)?;
        for a in c.objs() {
            let kernel = q.post_matrix(c, a).kernel();
            let basis_vecs = kernel.columns();
            let ob = Obligation { search: &search, generated: &generated, sequence: i, object: a };
            let basis = basis_vecs.iter().map(|f| lifting_sieve(c, seq, a, f)).collect::<Result<Vec<_>>>()?;
            let v = ob.decide(c, basis, || {
                let Some(coeffs) = finite_span(c, basis_vecs.len()) else { return Ok(None) };
                coeffs
                    .iter()
                    .map(|k| lifting_sieve(c, seq, a, &kernel.mul_vec(k)?))
                    .collect::<Result<Vec<_>>>()
                    .map(Some)
            })?;
            verdict = verdict.merge(v);
            if verdict.is_violated() {
                return Ok(PtbReport { strong_form: false, verdict });
            }
        }
    }
    Ok(PtbReport { strong_form: false, verdict })
}

/// `top(S)`: the least topology in which every `R_q` covers.
pub fn top_of(c: &FinLinearCategory, s: &Pretopology) -> Result<Topology> {
    let t = generated_topology(c, &seed_sieves(c, s)?)?;
    if cfg!(debug_assertions) && c.graded().is_none() {
        let report = axiom_check(c, &t, &[], 1 << 12)?;
        if !report.ok() {
            return Err(Error::Validation("closure of a pretopology failed the topology axioms".into()));
        }
    }
    Ok(t)
}

fn yoneda_complex(c: &FinLinearCategory, seq: &FormalSequence) -> Result<(Presheaf, Presheaf, Presheaf, PresheafMap, PresheafMap)> {
    let sum = |objs: &[Obj]| Presheaf::direct_sum(c, &objs.iter().map(|&o| Presheaf::representable(c, o)).collect::<Vec<_>>());
    let (z, y, x) = (sum(&seq.left), sum(&seq.middle), Presheaf::representable(c, seq.target));
    let (pf, qf) = (seq.p_formal()?, seq.q_formal(c)?);
    let p = PresheafMap { comps: c.objs().map(|a| pf.post_matrix(c, a)).collect() };
    let q = PresheafMap { comps: c.objs().map(|a| qf.post_matrix(c, a)).collect() };
    Ok((z, y, x, p, q))
}

/// Membership in `pre′(T)`: exact in presheaves at the middle, with covering image.
pub fn in_pre_prime(c: &FinLinearCategory, t: &Topology, seq: &FormalSequence) -> Result<bool> {
    Ok(strong_exactness(c, seq)? && t.covers(&cover_sieve(c, seq)?))
}

/// Membership in `pre(T)`: `⊕Z(Z) -> ⊕Z(Y) -> Z(X) -> 0` is exact in sheaves.
pub fn in_pre(c: &FinLinearCategory, t: &Topology, seq: &FormalSequence) -> Result<bool> {
    let (_, y, x, p, q) = yoneda_complex(c, seq)?;
    let h = homology(c, &y, &p, &q)?;
    let coker = cokernel(c, &x, &q)?;
    Ok(sheafify(c, t, &h.presheaf)?.sheaf.is_zero() && sheafify(c, t, &coker.presheaf)?.sheaf.is_zero())
}

/// `0 -> F(X) -> ⊕ F(Y_β) -> ⊕ F(Z_γ)` is exact for every sequence.
pub fn is_sheaf_via(c: &FinLinearCategory, s: &Pretopology, f: &Presheaf) -> Result<bool> {
    let field = c.field();
    for seq in &s.sequences {
        let ydims: Vec<usize> = seq.middle.iter().map(|&y| f.dim(y)).collect();
        let zdims: Vec<usize> = seq.left.iter().map(|&z| f.dim(z)).collect();
        let first = Matrix::blocks(field, &ydims, &[f.dim(seq.target)], |b, _| Some(f.act(&seq.q[b])))?;
        let second = Matrix::blocks(field, &zdims, &ydims, |g, b| Some(f.act(&seq.p[g][b])))?;
        if !first.is_injective() || Subspace::span(&first) != Subspace::span(&second.kernel()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A sequence in `pre′(T)` on `x` whose image is the minimal covering sieve.
pub fn generating_sequence(c: &FinLinearCategory, t: &Topology, x: Obj) -> Result<FormalSequence> {
    let q = t.min_sieve(x).generators(c);
    let middle: Vec<Obj> = q.iter().map(|m| m.src).collect();
    let qf = FormalMorphism::into_object(c, &q, x)?;
    let mut left = Vec::new();
    let mut p = Vec::new();
    for w in c.objs() {
        for k in qf.post_matrix(c, w).kernel().columns() {
            left.push(w);
            p.push(split_column(c, w, &middle, &k)?);
        }
    }
    FormalSequence::new(c, q, x, p, left)
}

/// One generating sequence per object; its closure is `t` again.
pub fn generating_pretopology(c: &FinLinearCategory, t: &Topology) -> Result<Pretopology> {
    Ok(Pretopology::new(c.objs().map(|x| generating_sequence(c, t, x)).collect::<Result<_>>()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreTwoReport {
    /// Indices of candidates lying in `pre(T)`.
    pub accepted: Vec<usize>,
    pub closure: Topology,
    pub generates: bool,
}

/// Filters 2-bounded candidates through `pre(T)` and tests whether they generate `T`.
pub fn pre_two(c: &FinLinearCategory, t: &Topology, candidates: &[FormalSequence]) -> Result<PreTwoReport> {
    let mut accepted = Vec::new();
    for (i, seq) in candidates.iter().enumerate() {
        if seq.middle.len() > 1 || seq.left.len() > 1 {
            return Err(Error::Shape(format!("candidate {i} is not 2-bounded")));
        }
        if in_pre(c, t, seq)? {
            accepted.push(i);
        }
    }
    let kept = Pretopology::new(accepted.iter().map(|&i| candidates[i].clone()).collect());
    let closure = top_of(c, &kept)?;
    let generates = closure == *t;
    Ok(PreTwoReport { accepted, closure, generates })
}

pub fn report_json(c: &FinLinearCategory, s: &Pretopology) -> Result<Value> {
    let pta = check_pta(c, s)?;
    let ptb = check_ptb(c, s)?;
    let mut m = Map::new();
    m.insert("PTa".into(), pta.to_json(c));
    m.insert("PTb".into(), ptb.verdict.to_json(c));
    m.insert("PTbStrong".into(), json!(ptb.strong_form));
    m.insert("indexSets".into(), json!("finite"));
    Ok(Value::Object(m))
}

/// `f ⊗ g` in the tensor category of `a` and `b`.
pub fn kelly_morphism(b: &FinLinearCategory, f: &Morphism, g: &Morphism) -> Morphism {
    let nb = b.num_objects();
    let coords = f.coords.iter().flat_map(|u| g.coords.iter().map(move |v| u * v)).collect();
    Morphism { src: f.src * nb + g.src, tgt: f.tgt * nb + g.tgt, coords }
}

fn kelly_sequence(seq: &FormalSequence, lift: impl Fn(&Morphism) -> Morphism, obj: impl Fn(Obj) -> Obj) -> FormalSequence {
    FormalSequence {
        target: obj(seq.target),
        middle: seq.middle.iter().map(|&y| obj(y)).collect(),
        left: seq.left.iter().map(|&z| obj(z)).collect(),
        q: seq.q.iter().map(&lift).collect(),
        p: seq.p.iter().map(|row| row.iter().map(&lift).collect()).collect(),
    }
}

/// `{s ⊗ Y : s ∈ S, Y ∈ b}` on the tensor category of `a` and `b`.
pub fn kelly_left(b: &FinLinearCategory, s: &Pretopology) -> Pretopology {
    let nb = b.num_objects();
    let mut out = Vec::new();
    for y in b.objs() {
        let id = b.identity(y);
        for seq in &s.sequences {
            out.push(kelly_sequence(seq, |f| kelly_morphism(b, f, &id), |x| x * nb + y));
        }
    }
    Pretopology { sequences: out, search_depth: s.search_depth }
}

/// `{X ⊗ s : X ∈ a, s ∈ S}` on the tensor category of `a` and `b`.
pub fn kelly_right(a: &FinLinearCategory, b: &FinLinearCategory, s: &Pretopology) -> Pretopology {
    let nb = b.num_objects();
    let mut out = Vec::new();
    for x in a.objs() {
        let id = a.identity(x);
        for seq in &s.sequences {
            out.push(kelly_sequence(seq, |g| kelly_morphism(b, &id, g), |y| x * nb + y));
        }
    }
    Pretopology { sequences: out, search_depth: s.search_depth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{a2_modules, bundled, cubic_truncation, dual_numbers, f2xf2_instance};
    use crate::presheaf::enumerate_presheaves;
    use crate::sheafify::is_sheaf;
    use crate::topology::enumerate_topologies;

    fn ideal(c: &FinLinearCategory, ints: &[i64]) -> Sieve {
        generated_sieve(c, 0, &[c.morphism_ints(0, 0, ints).unwrap()]).unwrap()
    }

    #[test]
    fn empty_pretopology_is_vacuous() {
        let k = f2xf2_instance();
        let s = Pretopology::empty();
        assert!(check_pta(&k.category, &s).unwrap().is_verified());
        assert!(check_ptb(&k.category, &s).unwrap().verdict.is_verified());
        assert_eq!(top_of(&k.category, &s).unwrap(), Topology::coarsest(&k.category));
    }

    #[test]
    fn gabriel_e1_closure() {
        let k = f2xf2_instance();
        let c = &k.category;
        let s = k.pretopology("s_e1").unwrap();
        assert_eq!(check_pta(c, s).unwrap(), Verdict::Verified { depth: 1 });
        let ptb = check_ptb(c, s).unwrap();
        assert!(!ptb.strong_form);
        assert_eq!(ptb.verdict, Verdict::Verified { depth: 1 });
        assert_eq!(*top_of(c, s).unwrap().min_sieve(0), ideal(c, &[1, 0]));
    }

    #[test]
    fn nilpotent_cover_gives_finest() {
        let k = cubic_truncation();
        let t = top_of(&k.category, k.pretopology("s_x").unwrap()).unwrap();
        assert_eq!(t, Topology::finest(&k.category));
        let search = CoverSearch::new(&k.category, k.pretopology("s_x").unwrap()).unwrap();
        assert!(search.minimal(0).unwrap().iter().any(Sieve::is_zero));
    }

    #[test]
    fn collapsing_sum_violates_ptb() {
        let k = dual_numbers();
        let c = &k.category;
        let one = c.identity(0);
        let seq = FormalSequence::new(c, vec![one.clone(), one], 0, vec![], vec![]).unwrap();
        let s = Pretopology::new(vec![seq]);
        assert!(check_pta(c, &s).unwrap().is_verified());
        assert!(check_ptb(c, &s).unwrap().verdict.is_violated());
        // A single nilpotent cover still satisfies the lifting condition.
        assert!(check_ptb(c, k.pretopology("s_x").unwrap()).unwrap().verdict.is_verified());
    }

    #[test]
    fn bundled_pretopologies_pass_both_axioms() {
        for inst in bundled() {
            for (name, s) in &inst.pretopologies {
                assert!(check_pta(&inst.category, s).unwrap().is_verified(), "{} {name}", inst.name);
                assert!(check_ptb(&inst.category, s).unwrap().verdict.is_verified(), "{} {name}", inst.name);
            }
        }
    }

    #[test]
    fn cokernel_sequence_is_strongly_exact() {
        let k = a2_modules();
        assert!(check_ptb(&k.category, k.pretopology("cokernel").unwrap()).unwrap().strong_form);
    }

    #[test]
    fn membership_in_pre_prime_and_pre() {
        let k = f2xf2_instance();
        let c = &k.category;
        let t = top_of(c, k.pretopology("s_e1").unwrap()).unwrap();
        let identity = FormalSequence::new(c, vec![c.identity(0)], 0, vec![], vec![]).unwrap();
        for top in [Topology::coarsest(c), Topology::finest(c), t.clone()] {
            assert!(in_pre_prime(c, &top, &identity).unwrap());
        }
        let s_e1 = &k.pretopology("s_e1").unwrap().sequences[0];
        let s_e2 = &k.pretopology("s_e2").unwrap().sequences[0];
        assert!(!in_pre_prime(c, &t, s_e1).unwrap());
        assert!(in_pre_prime(c, &t, &generating_sequence(c, &t, 0).unwrap()).unwrap());
        assert!(!in_pre_prime(c, &Topology::coarsest(c), s_e1).unwrap());
        assert!(in_pre(c, &t, s_e1).unwrap());
        assert!(!in_pre(c, &t, s_e2).unwrap());
        assert!(in_pre(c, &Topology::finest(c), s_e2).unwrap());
    }

    #[test]
    fn sheaf_condition_via_sequences() {
        let k = f2xf2_instance();
        let c = &k.category;
        let s = k.pretopology("s_e1").unwrap();
        let simple = |e1: i64, e2: i64| Presheaf::from_fn(c, vec![1], |m| Ok(Matrix::from_ints(c.field(), &[&[m.coords[0].as_i64().unwrap() * e1 + m.coords[1].as_i64().unwrap() * e2]]))).unwrap();
        assert!(is_sheaf_via(c, s, &simple(1, 0)).unwrap());
        assert!(!is_sheaf_via(c, s, &simple(0, 1)).unwrap());
        assert!(is_sheaf_via(c, &Pretopology::empty(), &simple(0, 1)).unwrap());
        let t = top_of(c, s).unwrap();
        for f in enumerate_presheaves(c, 2, 1000).unwrap() {
            assert_eq!(is_sheaf_via(c, s, &f).unwrap(), is_sheaf(c, &t, &f).unwrap());
        }
    }

    #[test]
    fn generating_sequences_round_trip() {
        for inst in bundled() {
            let c = &inst.category;
            for t in enumerate_topologies(c, 1 << 12).unwrap() {
                let s = generating_pretopology(c, &t).unwrap();
                assert_eq!(top_of(c, &s).unwrap(), t, "{}", inst.name);
                for seq in &s.sequences {
                    assert!(in_pre_prime(c, &t, seq).unwrap());
                }
            }
        }
    }

    #[test]
    fn closure_is_attained_by_a_composite() {
        for inst in bundled() {
            for (_, s) in &inst.pretopologies {
                let t = top_of(&inst.category, s).unwrap();
                let search = CoverSearch::new(&inst.category, s).unwrap();
                for x in inst.category.objs() {
                    assert!(search.minimal(x).unwrap().contains(t.min_sieve(x)), "{}", inst.name);
                }
            }
        }
    }

    #[test]
    fn pre_two_certificates() {
        let k = f2xf2_instance();
        let c = &k.category;
        let r = pre_two(c, &Topology::coarsest(c), &[]).unwrap();
        assert!(r.generates);
        let cands: Vec<FormalSequence> = ["s_e1", "s_e2"].iter().map(|n| k.pretopology(n).unwrap().sequences[0].clone()).collect();
        let r = pre_two(c, &Topology::finest(c), &cands).unwrap();
        assert_eq!(r.accepted, vec![0, 1]);
        assert!(r.generates);
        let wide = &k.pretopology("s_{e1,e2}").unwrap().sequences[0];
        assert!(pre_two(c, &Topology::finest(c), &[wide.clone()]).is_err());
    }

    #[test]
    fn json_round_trip() {
        for inst in bundled() {
            for (_, s) in &inst.pretopologies {
                let v = s.to_json(&inst.category);
                assert_eq!(Pretopology::from_json(&inst.category, &v).unwrap(), *s);
            }
        }
    }

    #[test]
    fn non_complex_is_rejected() {
        let k = dual_numbers();
        let c = &k.category;
        let v = json!({"sequences": [{"target": "*", "middle": ["*"], "left": ["*"], "q": [[1, 0]], "p": [[[1, 0]]]}]});
        assert!(matches!(Pretopology::from_json(c, &v), Err(Error::NotAComplex(_))));
    }
}
