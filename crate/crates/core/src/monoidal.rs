//! Morphisms to the unit, the `σ_u` sequences and the topologies they generate.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::lincat::{graded_window, FinLinearCategory, FormalMorphism, FormalSequence, MonoidalStructure, Morphism, Obj};
use crate::pretop::{cover_sieve, pta_target, ptb_target, CoverSearch, Pretopology, Verdict};
use crate::sheafify::{sh_hom, ShHomResult, ShHomStage};
use crate::sieve::generated_sieve;
use crate::topology::Topology;

fn structure(c: &FinLinearCategory) -> Result<&MonoidalStructure> {
    c.monoidal().ok_or_else(|| Error::Unsupported("category has no tensor product".into()))
}

/// Position of a unit morphism in the chain `Zero`, `InU ⊇ InUep ⊇ InUex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UClass {
    Zero,
    InU,
    InUep,
    InUex,
}

impl UClass {
    pub fn name(self) -> &'static str {
        match self {
            UClass::Zero => "Zero",
            UClass::InU => "InU",
            UClass::InUep => "InUep",
            UClass::InUex => "InUex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UReport {
    pub class: UClass,
    /// Every map equalising `u ⊗ U` and `U ⊗ u` factors through `u`.
    pub strict_epi: bool,
    /// Objects `A` where the exactness test failed, if any.
    pub witness: Option<Obj>,
}

fn check_unit_legs(c: &FinLinearCategory, u: &[Morphism]) -> Result<Obj> {
    let unit = structure(c)?.unit;
    if u.is_empty() || u.iter().any(|m| m.tgt != unit) {
        return Err(Error::TargetMismatch("a unit morphism ends at the tensor unit".into()));
    }
    Ok(unit)
}

/// `σ_u: U ⊗ U --(u⊗U - U⊗u)--> U --u--> 1` for `u = (u_i): ⊕ U_i -> 1`.
pub fn sigma_sequence(c: &FinLinearCategory, u: &[Morphism]) -> Result<FormalSequence> {
    let unit = check_unit_legs(c, u)?;
    let m = structure(c)?;
    let k = u.len();
    let mut left = Vec::with_capacity(k * k);
    let mut p = Vec::with_capacity(k * k);
    for (i, ui) in u.iter().enumerate() {
        for (j, uj) in u.iter().enumerate() {
            let z = m.tensor_obj(c, ui.src, uj.src)?;
            let mut row: Vec<Morphism> = u.iter().map(|w| c.zero(z, w.src)).collect();
            let a = m.tensor_mor(c, ui, &c.identity(uj.src))?;
            let b = m.tensor_mor(c, &c.identity(ui.src), uj)?;
            row[j] = row[j].add(&a);
            row[i] = row[i].add(&b.neg());
            left.push(z);
            p.push(row);
        }
    }
    FormalSequence::new(c, u.to_vec(), unit, p, left)
}

/// `hom(1, A) -> ⊕ hom(U_i, A)` is injective and, for `InUex`, `σ_u` is right exact at `A`.
pub fn classify_u(c: &FinLinearCategory, u: &[Morphism]) -> Result<UReport> {
    let unit = check_unit_legs(c, u)?;
    if u.iter().all(Morphism::is_zero) {
        return Ok(UReport { class: UClass::Zero, strict_epi: false, witness: None });
    }
    let q = FormalMorphism::into_object(c, u, unit)?;
    for a in c.objs() {
        if !q.pre_matrix(c, a).is_injective() {
            return Ok(UReport { class: UClass::InU, strict_epi: false, witness: Some(a) });
        }
    }
    let sigma = sigma_sequence(c, u)?;
    let p = sigma.p_formal()?;
    let mut witness = None;
    for a in c.objs() {
        let ker = Subspace::span(&p.pre_matrix(c, a).kernel());
        if ker != Subspace::span(&q.pre_matrix(c, a)) {
            witness = Some(a);
            break;
        }
    }
    let class = if witness.is_none() { UClass::InUex } else { UClass::InUep };
    Ok(UReport { class, strict_epi: is_strict_epi(c, u)?, witness })
}

/// Each `f: U -> A` with `f ∘ (u ⊗ U) = f ∘ (U ⊗ u)` is `g ∘ u` for a solved `g`.
pub fn is_strict_epi(c: &FinLinearCategory, u: &[Morphism]) -> Result<bool> {
    let unit = check_unit_legs(c, u)?;
    let m = structure(c)?;
    let q = FormalMorphism::into_object(c, u, unit)?;
    let srcs: Vec<Obj> = u.iter().map(|w| w.src).collect();
    let mut pairs = Vec::new();
    for (i, ui) in u.iter().enumerate() {
        for (j, uj) in u.iter().enumerate() {
            let z = m.tensor_obj(c, ui.src, uj.src)?;
            let mut first: Vec<Morphism> = srcs.iter().map(|&s| c.zero(z, s)).collect();
            let mut second = first.clone();
            first[j] = m.tensor_mor(c, ui, &c.identity(uj.src))?;
            second[i] = m.tensor_mor(c, &c.identity(ui.src), uj)?;
            pairs.push((z, first, second));
        }
    }
    let left: Vec<Obj> = pairs.iter().map(|(z, _, _)| *z).collect();
    let a_map = FormalMorphism::new(left.clone(), srcs.clone(), pairs.iter().map(|(_, f, _)| f.clone()).collect())?;
    let b_map = FormalMorphism::new(left, srcs, pairs.iter().map(|(_, _, s)| s.clone()).collect())?;
    for a in c.objs() {
        let diff = a_map.pre_matrix(c, a).sub(&b_map.pre_matrix(c, a))?;
        let through = q.pre_matrix(c, a);
        for f in diff.kernel().columns() {
            if through.solve(&Matrix::column_vector(c.field(), f))?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct TvPretopology {
    pub pretopology: Pretopology,
    /// Objects `X` for which `σ_u ⊗ X` leaves the window.
    pub warnings: Vec<String>,
    pub pta: Verdict,
    pub ptb: Verdict,
}

/// `{σ_u ⊗ X : u ∈ V}` over every object, with the witnesses `u ⊗ A` checked.
pub fn tv_pretopology(c: &FinLinearCategory, vs: &[Vec<Morphism>]) -> Result<TvPretopology> {
    let mut seqs = Vec::new();
    let mut index = Vec::new();
    let mut warnings = Vec::new();
    for (ui, u) in vs.iter().enumerate() {
        if u.iter().all(Morphism::is_zero) {
            return Err(Error::Validation("unit morphisms in V must be nonzero".into()));
        }
        let sigma = sigma_sequence(c, u)?;
        for x in c.objs() {
            match sigma.tensor_right(c, x) {
                Ok(s) => {
                    index.push((ui, x));
                    seqs.push(s);
                }
                Err(Error::WindowOverflow(w)) => warnings.push(format!("σ_{ui} ⊗ {} clipped at {w}", c.label(x))),
                Err(e) => return Err(e),
            }
        }
    }
    let (mut pta, mut ptb) = (Verdict::Verified { depth: 1 }, Verdict::Verified { depth: 1 });
    for (k, seq) in seqs.iter().enumerate() {
        let ui = index[k].0;
        for a in c.objs() {
            let Some(j) = index.iter().position(|&(u2, x2)| u2 == ui && x2 == a) else {
                let reason = format!("witness σ_{ui} ⊗ {} lies outside the window", c.label(a));
                if pta.is_verified() {
                    pta = Verdict::Unknown { reason: reason.clone() };
                }
                if ptb.is_verified() {
                    ptb = Verdict::Unknown { reason };
                }
                continue;
            };
            let witness = cover_sieve(c, &seqs[j])?;
            if !pta_target(c, seq, a)?.contains(&witness)? && !pta.is_violated() {
                pta = Verdict::Unknown { reason: format!("u ⊗ {} does not factor through sequence {k}", c.label(a)) };
            }
            if !ptb_target(c, seq, a)?.contains(&witness)? && !ptb.is_violated() {
                ptb = Verdict::Unknown { reason: format!("u ⊗ {} does not lift through sequence {k}", c.label(a)) };
            }
        }
    }
    let pretopology = Pretopology::new(seqs);
    Ok(TvPretopology { pretopology, warnings, pta, ptb })
}

/// Tensor product of two formal unit morphisms.
pub fn tensor_units(c: &FinLinearCategory, u: &[Morphism], w: &[Morphism]) -> Result<Vec<Morphism>> {
    let m = structure(c)?;
    let mut out = Vec::with_capacity(u.len() * w.len());
    for a in u {
        for b in w {
            out.push(m.tensor_mor(c, a, b)?);
        }
    }
    Ok(out)
}

/// `V̄` up to products of `max_len` factors, skipping those that leave the window.
pub fn tensor_closure(c: &FinLinearCategory, vs: &[Vec<Morphism>], max_len: usize) -> Result<Vec<Vec<Morphism>>> {
    let mut out: Vec<Vec<Morphism>> = vs.to_vec();
    let mut frontier = vs.to_vec();
    for _ in 1..max_len {
        let mut next = Vec::new();
        for f in &frontier {
            for v in vs {
                match tensor_units(c, f, v) {
                    Ok(p) if !out.contains(&p) => next.push(p),
                    Ok(_) | Err(Error::WindowOverflow(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// `ann_V(X) = {u: X -> 1 | u* ∘ v = 0 for some v ∈ V̄}`, with `V̄` truncated at `max_len`.
pub fn ann(c: &FinLinearCategory, vs: &[Vec<Morphism>], x: Obj, max_len: usize) -> Result<Subspace> {
    let m = structure(c)?;
    let unit = m.unit;
    let field = c.field();
    let mut acc = Subspace::zero(field, c.hom_dim(x, unit));
    let xd = m.dual_obj(c, x).ok_or_else(|| Error::Unsupported("object has no known dual".into()))?;
    for v in tensor_closure(c, vs, max_len)? {
        // u ↦ (u* ∘ v_α)_α is linear in the coordinates of u.
        let mut stack = Matrix::zeros(field, 0, c.hom_dim(x, unit));
        for leg in &v {
            let map = c.pre_matrix(leg, xd);
            stack = stack.vcat(&map)?;
        }
        // Duals keep coordinates, so hom(x, 1) and hom(1, x*) share a basis.
        acc = acc.sum(&Subspace::span(&stack.kernel()))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalReport {
    pub monoidal: bool,
    /// `(X, A)` with `M(X) ⊗ A` not covering `X ⊗ A`.
    pub witness: Option<(Obj, Obj)>,
    /// Pairs skipped because a tensor product leaves the window.
    pub clipped: Vec<(Obj, Obj)>,
}

/// `M(X) ⊗ A` covers `X ⊗ A` for every pair of objects inside the window.
pub fn monoidal_check(c: &FinLinearCategory, t: &Topology) -> Result<MonoidalReport> {
    let m = structure(c)?;
    if !m.has_braiding() {
        return Err(Error::Unsupported("monoidal check needs a braiding".into()));
    }
    let mut clipped = Vec::new();
    for x in c.objs() {
        for a in c.objs() {
            let Some(xa) = m.tensor_obj_opt(x, a) else {
                clipped.push((x, a));
                continue;
            };
            let id = c.identity(a);
            let mut gens = Vec::new();
            let mut clip = false;
            for r in t.min_sieve(x).generators(c) {
                match m.tensor_mor(c, &r, &id) {
                    Ok(g) => gens.push(g),
                    Err(Error::WindowOverflow(_)) => clip = true,
                    Err(e) => return Err(e),
                }
            }
            if clip {
                clipped.push((x, a));
                continue;
            }
            if !t.covers(&generated_sieve(c, xa, &gens)?) {
                return Ok(MonoidalReport { monoidal: false, witness: Some((x, a)), clipped });
            }
        }
    }
    Ok(MonoidalReport { monoidal: true, witness: None, clipped })
}

/// `R_q ⊗ A` contains a composite cover of `X ⊗ A`, for every cover `q` of `S`
/// and every object `A` such that the whole sequence `q ⊗ A` fits the window.
pub fn monoidal_check_pretopology(c: &FinLinearCategory, s: &Pretopology) -> Result<MonoidalReport> {
    let m = structure(c)?;
    let search = CoverSearch::new(c, s)?;
    let mut clipped = Vec::new();
    for seq in &s.sequences {
        let x = seq.target;
        for a in c.objs() {
            let id = c.identity(a);
            let left_fits = seq.left.iter().all(|&z| m.tensor_obj_opt(z, a).is_some());
            let legs: Result<Vec<Morphism>> = seq.q.iter().map(|q| m.tensor_mor(c, q, &id)).collect();
            let legs = match legs {
                Ok(l) if left_fits => l,
                Ok(_) | Err(Error::WindowOverflow(_)) => {
                    clipped.push((x, a));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let xa = m.tensor_obj(c, x, a)?;
            if search.find(xa, &generated_sieve(c, xa, &legs)?)?.is_none() {
                return Ok(MonoidalReport { monoidal: false, witness: Some((x, a)), clipped });
            }
        }
    }
    Ok(MonoidalReport { monoidal: true, witness: None, clipped })
}

/// For every `A` and `u ∈ V` some `v ∈ V̄` has `v ⊗ A` factoring through `A ⊗ u`.
pub fn factorization_monoidal_check(c: &FinLinearCategory, vs: &[Vec<Morphism>], max_len: usize) -> Result<MonoidalReport> {
    let m = structure(c)?;
    let closure = tensor_closure(c, vs, max_len)?;
    let mut clipped = Vec::new();
    for u in vs {
        for a in c.objs() {
            let id = c.identity(a);
            let Ok(au) = u.iter().map(|ui| m.tensor_mor(c, &id, ui)).collect::<Result<Vec<_>>>() else {
                clipped.push((m.unit, a));
                continue;
            };
            let target = generated_sieve(c, a, &au)?;
            let mut found = false;
            let mut any_fit = false;
            for v in &closure {
                let Ok(va) = v.iter().map(|vi| m.tensor_mor(c, vi, &id)).collect::<Result<Vec<_>>>() else {
                    continue;
                };
                any_fit = true;
                if va.iter().all(|g| target.contains_morphism(g)) {
                    found = true;
                    break;
                }
            }
            if !any_fit {
                clipped.push((m.unit, a));
            } else if !found {
                return Ok(MonoidalReport { monoidal: false, witness: Some((m.unit, a)), clipped });
            }
        }
    }
    Ok(MonoidalReport { monoidal: true, witness: None, clipped })
}

/// Smallest `k ≤ max_power` with `v^{⊗k} = u ∘ g` for some formal `g`.
pub fn factorization_power(c: &FinLinearCategory, v: &[Morphism], u: &[Morphism], max_power: usize) -> Result<Option<usize>> {
    let unit = check_unit_legs(c, u)?;
    let q = FormalMorphism::into_object(c, u, unit)?;
    let mut power = v.to_vec();
    for k in 1..=max_power {
        let mut ok = true;
        for leg in &power {
            let through = q.post_matrix(c, leg.src);
            if through.solve(&Matrix::column_vector(c.field(), leg.coords.clone()))?.is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(k));
        }
        match tensor_units(c, &power, v) {
            Ok(p) => power = p,
            Err(Error::WindowOverflow(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Both inclusions between `T_V` and `T_{v}` by factorisation through composite covers.
///
/// `v` factors through itself, so `T_{v} ⊆ T_V` holds once `v ∈ V`; the
/// converse needs a power of `v` through each `u ∈ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub powers: Vec<Option<usize>>,
    pub v_in_family: bool,
}

impl FactorizationReport {
    pub fn equal(&self) -> bool {
        self.v_in_family && self.powers.iter().all(Option::is_some)
    }
}

pub fn compare_tv(c: &FinLinearCategory, v: &[Morphism], family: &[Vec<Morphism>], max_power: usize) -> Result<FactorizationReport> {
    let powers = family.iter().map(|u| factorization_power(c, v, u, max_power)).collect::<Result<Vec<_>>>()?;
    let v_in_family = family.iter().any(|u| u == v);
    Ok(FactorizationReport { powers, v_in_family })
}

/// The monomial `x^e: S<s> -> S<s - |e|>`.
pub fn monomial(c: &FinLinearCategory, from: i64, exps: &[u32]) -> Result<Morphism> {
    let g = c.graded().ok_or_else(|| Error::Unsupported("not a graded window".into()))?;
    let d: u32 = exps.iter().sum();
    let (src, tgt) = (g.object(from), g.object(from - d as i64));
    let (Some(src), Some(tgt)) = (src, tgt) else {
        return Err(Error::WindowOverflow(format!("S<{from}> -> S<{}>", from - d as i64)));
    };
    let mut coords = vec![c.field().zero(); c.hom_dim(src, tgt)];
    coords[g.monomial_index(exps)] = c.field().one();
    Ok(Morphism { src, tgt, coords })
}

/// `v = (x_0, ..., x_n): S<1>^{n+1} -> S`.
pub fn graded_generator(c: &FinLinearCategory) -> Result<Vec<Morphism>> {
    let g = c.graded().ok_or_else(|| Error::Unsupported("not a graded window".into()))?;
    (0..=g.n)
        .map(|i| {
            let mut e = vec![0; g.n + 1];
            e[i] = 1;
            monomial(c, 1, &e)
        })
        .collect()
}

/// Unit morphisms `(x_0^{d_0}, ..., x_n^{d_n})` with `d_i ≤ max_deg` whose
/// cokernel vanishes in some degree inside the window.
pub fn cofinite_monomial_family(c: &FinLinearCategory, max_deg: u32) -> Result<Vec<Vec<Morphism>>> {
    let g = c.graded().ok_or_else(|| Error::Unsupported("not a graded window".into()))?;
    let vars = g.n + 1;
    let mut out = Vec::new();
    let mut degs = vec![1u32; vars];
    loop {
        let legs = (0..vars)
            .map(|i| {
                let mut e = vec![0; vars];
                e[i] = degs[i];
                monomial(c, degs[i] as i64, &e)
            })
            .collect::<Result<Vec<_>>>()?;
        if cokernel_vanishes(c, &legs)? {
            out.push(legs);
        }
        let mut i = 0;
        while i < vars && degs[i] == max_deg {
            degs[i] = 1;
            i += 1;
        }
        if i == vars {
            break;
        }
        degs[i] += 1;
    }
    Ok(out)
}

/// Some `S_k` with `S<k> -> S` inside the window lies in the image of `u`.
pub fn cokernel_vanishes(c: &FinLinearCategory, u: &[Morphism]) -> Result<bool> {
    let g = c.graded().ok_or_else(|| Error::Unsupported("not a graded window".into()))?;
    let unit = check_unit_legs(c, u)?;
    let q = FormalMorphism::into_object(c, u, unit)?;
    for k in 1..=g.hi {
        let w = g.object(k).expect("inside window");
        if Subspace::span(&q.post_matrix(c, w)).is_full() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Colimit stages `σ_{v^{⊗k}}` on `S<0>`, for `k = 1..=max_stage` while they fit.
pub fn graded_stages(c: &FinLinearCategory, max_stage: usize) -> Result<Vec<ShHomStage>> {
    let g = c.graded().ok_or_else(|| Error::Unsupported("not a graded window".into()))?;
    let v = graded_generator(c)?;
    let vars = g.n + 1;
    let mut stages = Vec::new();
    let mut power = v.clone();
    let mut prev_middle = vec![g.object(0).expect("unit")];
    for k in 1..=max_stage {
        if k > 1 {
            power = match tensor_units(c, &power, &v) {
                Ok(p) => p,
                Err(Error::WindowOverflow(_)) => break,
                Err(e) => return Err(e),
            };
        }
        let seq = match sigma_sequence(c, &power) {
            Ok(s) => s,
            Err(Error::WindowOverflow(_)) => break,
            Err(e) => return Err(e),
        };
        let refine = if k == 1 {
            seq.q_formal(c)?
        } else {
            let comps = (0..seq.middle.len())
                .map(|idx| {
                    let (parent, var) = (idx / vars, idx % vars);
                    (0..prev_middle.len())
                        .map(|j| if j == parent { v[var].clone_shifted(c, k as i64) } else { Ok(c.zero(seq.middle[idx], prev_middle[j])) })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FormalMorphism::new(seq.middle.clone(), prev_middle.clone(), comps)?
        };
        prev_middle = seq.middle.clone();
        stages.push(ShHomStage { seq, refine });
    }
    Ok(stages)
}

trait Shift {
    fn clone_shifted(&self, c: &FinLinearCategory, from: i64) -> Result<Morphism>;
}

impl Shift for Morphism {
    /// The same polynomial, as a map out of `S<from>`.
    fn clone_shifted(&self, c: &FinLinearCategory, from: i64) -> Result<Morphism> {
        let g = c.graded().expect("graded window");
        let d = g.degree(self.src, self.tgt).expect("homogeneous map");
        let (src, tgt) = (g.object(from), g.object(from - d as i64));
        let (Some(src), Some(tgt)) = (src, tgt) else {
            return Err(Error::WindowOverflow(format!("S<{from}>")));
        };
        Ok(Morphism { src, tgt, coords: self.coords.clone() })
    }
}

/// `dim Sh(Z S<0>, Z S<-d>)` for the `{v}` topology on `k[x_0..x_n]`, through the
/// colimit over powers of `v` inside the window `[-window, window]`.
pub fn proj_hom(n: usize, d: i64, window: i64, max_stage: usize) -> Result<ShHomResult> {
    if window < 2 || d.abs() > window {
        return Err(Error::WindowOverflow(format!("window {window} cannot hold degree {d}; enlarge it")));
    }
    let c = graded_window(Field::F2, n, -window, window)?;
    let g = c.graded().expect("graded window");
    let (x, x2) = (g.object(0).expect("unit"), g.object(-d).expect("checked above"));
    let stages = graded_stages(&c, max_stage)?;
    sh_hom(&c, x, x2, &stages).map_err(|e| match e {
        Error::Unstable(m) => Error::Unstable(format!("{m}; enlarge the window")),
        other => other,
    })
}

pub fn u_report_json(r: &UReport, c: &FinLinearCategory) -> Value {
    json!({
        "class": r.class.name(),
        "strictEpi": r.strict_epi,
        "witness": r.witness.map(|a| c.label(a).to_string()),
    })
}
