//! Presheaves of finite-dimensional vector spaces and their morphisms.
//!
//! A presheaf stores a dimension per object and, for every basis morphism
//! `f: A -> B`, the matrix of `F(f): F(B) -> F(A)`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar, Subspace};
use crate::lincat::{all_vectors, FinLinearCategory, Morphism, Obj};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presheaf {
    field: Field,
    dims: Vec<usize>,
    /// `action[a][b][i]` is `F(f_i)` for the basis morphism `f_i: a -> b`.
    action: Vec<Vec<Vec<Matrix>>>,
}

/// A natural transformation, one matrix `G(a) x F(a)` per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMap {
    pub comps: Vec<Matrix>,
}

impl Presheaf {
    /// Builds a presheaf after checking matrix shapes.
    pub fn new(c: &FinLinearCategory, dims: Vec<usize>, action: Vec<Vec<Vec<Matrix>>>) -> Result<Presheaf> {
        let n = c.num_objects();
        if dims.len() != n || action.len() != n || action.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("presheaf data does not match object count".into()));
        }
        for a in c.objs() {
            for b in c.objs() {
                if action[a][b].len() != c.hom_dim(a, b) {
                    return Err(Error::Shape(format!("wrong number of action matrices for hom({}, {})", c.label(a), c.label(b))));
                }
                for m in &action[a][b] {
                    if m.field() != c.field() {
                        return Err(Error::FieldMismatch(c.field(), m.field()));
                    }
                    if (m.rows(), m.cols()) != (dims[a], dims[b]) {
                        return Err(Error::Shape(format!(
                            "action of a morphism {} -> {} must be {}x{}",
                            c.label(a), c.label(b), dims[a], dims[b]
                        )));
                    }
                }
            }
        }
        Ok(Presheaf { field: c.field(), dims, action })
    }

    /// Builds a presheaf from actions on basis morphisms computed by `act`.
    pub fn from_fn(c: &FinLinearCategory, dims: Vec<usize>, act: impl Fn(&Morphism) -> Result<Matrix>) -> Result<Presheaf> {
        let action = c
            .objs()
            .map(|a| c.objs().map(|b| c.basis_morphisms(a, b).iter().map(&act).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Presheaf::new(c, dims, action)
    }

    pub fn zero(c: &FinLinearCategory) -> Presheaf {
        Presheaf::from_fn(c, vec![0; c.num_objects()], |_| Ok(Matrix::zeros(c.field(), 0, 0))).expect("zero presheaf")
    }

    /// The representable `hom(-, x)`.
    pub fn representable(c: &FinLinearCategory, x: Obj) -> Presheaf {
        let dims = c.objs().map(|b| c.hom_dim(b, x)).collect();
        Presheaf::from_fn(c, dims, |f| Ok(c.pre_matrix(f, x))).expect("representable is well-formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, a: Obj) -> usize {
        self.dims[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn basis_action(&self, a: Obj, b: Obj, i: usize) -> &Matrix {
        &self.action[a][b][i]
    }

    /// `F(m)` for an arbitrary morphism `m`.
    pub fn act(&self, m: &Morphism) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.dims[m.src], self.dims[m.tgt]);
        for (i, x) in m.coords.iter().enumerate() {
            if !x.is_zero() {
                out = out.add(&self.action[m.src][m.tgt][i].scale(x)).expect("same shape");
            }
        }
        out
    }

    /// Lists violations of `F(id) = 1` and `F(g∘f) = F(f)F(g)` on basis morphisms.
    pub fn functor_violations(&self, c: &FinLinearCategory) -> Vec<String> {
        let mut out = Vec::new();
        for a in c.objs() {
            if self.act(&c.identity(a)) != Matrix::identity(self.field, self.dims[a]) {
                out.push(format!("F(id_{}) is not the identity", c.label(a)));
            }
        }
        for a in c.objs() {
            for b in c.objs() {
                for d in c.objs() {
                    for f in c.basis_morphisms(a, b) {
                        for g in c.basis_morphisms(b, d) {
                            let gf = c.compose(&g, &f).expect("composable");
                            let rhs = self.act(&f).mul(&self.act(&g)).expect("shapes agree");
                            if self.act(&gf) != rhs {
                                out.push(format!(
                                    "F is not functorial on {} -> {} -> {}",
                                    c.label(a), c.label(b), c.label(d)
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_functor(&self, c: &FinLinearCategory) -> bool {
        self.functor_violations(c).is_empty()
    }

    /// Direct sum, with summands stacked in order.
    pub fn direct_sum(c: &FinLinearCategory, parts: &[Presheaf]) -> Presheaf {
        let dims: Vec<usize> = c.objs().map(|a| parts.iter().map(|p| p.dims[a]).sum()).collect();
        Presheaf::from_fn(c, dims, |f| {
            let rows: Vec<usize> = parts.iter().map(|p| p.dims[f.src]).collect();
            let cols: Vec<usize> = parts.iter().map(|p| p.dims[f.tgt]).collect();
            Matrix::blocks(c.field(), &rows, &cols, |i, j| (i == j).then(|| parts[i].act(f)))
        })
        .expect("direct sum is well-formed")
    }

    /// Restriction along a functor given on objects and basis morphisms.
    pub fn restrict(
        &self,
        src: &FinLinearCategory,
        obj_map: impl Fn(Obj) -> Obj,
        mor_map: impl Fn(&Morphism) -> Morphism,
    ) -> Result<Presheaf> {
        let dims = src.objs().map(|a| self.dims[obj_map(a)]).collect();
        Presheaf::from_fn(src, dims, |f| Ok(self.act(&mor_map(f))))
    }

    pub fn to_json(&self, c: &FinLinearCategory) -> Value {
        let mut values = Map::new();
        let mut action = Map::new();
        for a in c.objs() {
            values.insert(c.label(a).into(), json!(self.dims[a]));
            for b in c.objs() {
                if self.dims[a] * self.dims[b] == 0 {
                    continue;
                }
                for (i, m) in self.action[a][b].iter().enumerate() {
                    let rows: Vec<Value> = (0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(Scalar::to_json).collect())).collect();
                    action.insert(c.basis_label(a, b, i).into(), Value::Array(rows));
                }
            }
        }
        json!({"values": values, "action": action})
    }

    /// Parses `{"values": {...}, "action": {...}}` and checks functoriality.
    pub fn from_json(c: &FinLinearCategory, v: &Value) -> Result<Presheaf> {
        let values = v.get("values").and_then(Value::as_object).ok_or_else(|| Error::Parse("missing values".into()))?;
        let mut dims = vec![0; c.num_objects()];
        for (k, d) in values {
            dims[c.obj(k)?] = d.as_u64().ok_or_else(|| Error::Parse(format!("dimension of {k} must be a count")))? as usize;
        }
        let empty = Map::new();
        let action = v.get("action").map_or(Some(&empty), Value::as_object).ok_or_else(|| Error::Parse("action must be an object".into()))?;
        for k in action.keys() {
            c.basis_by_label(k)?;
        }
        let field = c.field();
        let p = Presheaf::from_fn(c, dims.clone(), |f| {
            let i = f.coords.iter().position(Scalar::is_one).expect("basis morphism");
            let (ra, cb) = (dims[f.src], dims[f.tgt]);
            if ra * cb == 0 {
                return Ok(Matrix::zeros(field, ra, cb));
            }
            let label = c.basis_label(f.src, f.tgt, i);
            let m = action.get(label).ok_or_else(|| Error::Parse(format!("missing action of {label:?}")))?;
            let rows = m
                .as_array()
                .ok_or_else(|| Error::Parse(format!("action of {label:?} must be a matrix")))?
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                        .iter()
                        .map(|x| field.parse_json(x))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(field, rows)?;
            if (m.rows(), m.cols()) != (ra, cb) {
                return Err(Error::Shape(format!("action of {label:?} must be {ra}x{cb}")));
            }
            Ok(m)
        })?;
        let bad = p.functor_violations(c);
        if !bad.is_empty() {
            return Err(Error::Validation(bad.join("; ")));
        }
        Ok(p)
    }
}

impl PresheafMap {
    pub fn zero(f: &Presheaf, g: &Presheaf) -> PresheafMap {
        PresheafMap { comps: f.dims.iter().zip(&g.dims).map(|(&m, &n)| Matrix::zeros(f.field, n, m)).collect() }
    }

    pub fn identity(f: &Presheaf) -> PresheafMap {
        PresheafMap { comps: f.dims.iter().map(|&d| Matrix::identity(f.field, d)).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PresheafMap) -> Result<PresheafMap> {
        Ok(PresheafMap { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect::<Result<_>>()? })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_natural(&self, c: &FinLinearCategory, f: &Presheaf, g: &Presheaf) -> bool {
        c.objs().all(|a| {
            c.objs().all(|b| {
                c.basis_morphisms(a, b).iter().all(|m| {
                    g.act(m).mul(&self.comps[b]).ok() == self.comps[a].mul(&f.act(m)).ok()
                })
            })
        })
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(Matrix::is_injective)
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(Matrix::is_surjective)
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn kernel_spaces(&self) -> Vec<Subspace> {
        self.comps.iter().map(|m| Subspace::span(&m.kernel())).collect()
    }

    pub fn image_spaces(&self) -> Vec<Subspace> {
        self.comps.iter().map(Subspace::span).collect()
    }
}

/// Space of natural transformations `F -> G` inside `⊕_a Hom(F(a), G(a))`.
#[derive(Clone, Debug)]
pub struct NatSpace {
    pub space: Subspace,
    offsets: Vec<usize>,
    src_dims: Vec<usize>,
    tgt_dims: Vec<usize>,
}

impl NatSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Flattens a map (row-major per object) into the ambient coordinates.
    pub fn flatten(&self, m: &PresheafMap) -> Vec<Scalar> {
        m.comps.iter().flat_map(|c| c.entries().to_vec()).collect()
    }

    pub fn unflatten(&self, v: &[Scalar]) -> PresheafMap {
        let field = self.space.field();
        let comps = (0..self.offsets.len())
            .map(|a| {
                let (r, c) = (self.tgt_dims[a], self.src_dims[a]);
                Matrix::new(field, r, c, v[self.offsets[a]..self.offsets[a] + r * c].to_vec()).expect("slice has the right length")
            })
            .collect();
        PresheafMap { comps }
    }

    pub fn basis(&self) -> Vec<PresheafMap> {
        self.space.basis_vectors().iter().map(|v| self.unflatten(v)).collect()
    }

    /// Coordinates of a natural map in the canonical basis.
    pub fn coords(&self, m: &PresheafMap) -> Option<Vec<Scalar>> {
        self.space.coords(&self.flatten(m))
    }
}

/// Solves the naturality equations `G(f) η_b = η_a F(f)` on basis morphisms.
pub fn nat_space(c: &FinLinearCategory, f: &Presheaf, g: &Presheaf) -> NatSpace {
    let field = c.field();
    let mut offsets = Vec::new();
    let mut total = 0;
    for a in c.objs() {
        offsets.push(total);
        total += f.dims[a] * g.dims[a];
    }
    let var = |a: Obj, r: usize, col: usize| offsets[a] + r * f.dims[a] + col;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in c.objs() {
        for b in c.objs() {
            for (i, _) in c.basis_labels(a, b).iter().enumerate() {
                let (fm, gm) = (&f.action[a][b][i], &g.action[a][b][i]);
                for r in 0..g.dims[a] {
                    for col in 0..f.dims[b] {
                        let mut row = vec![field.zero(); total];
                        for k in 0..g.dims[b] {
                            let x = &gm[(r, k)];
                            if !x.is_zero() {
                                let v = var(b, k, col);
                                row[v] = &row[v] + x;
                            }
                        }
                        for k in 0..f.dims[a] {
                            let x = &fm[(k, col)];
                            if !x.is_zero() {
                                let v = var(a, r, k);
                                row[v] = &row[v] - x;
                            }
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(field, total)
    } else {
        Subspace::span(&Matrix::from_rows(field, rows).expect("rows have equal length").kernel())
    };
    NatSpace { space, offsets, src_dims: f.dims.clone(), tgt_dims: g.dims.clone() }
}

/// A subquotient `K / I` of a presheaf with chosen splittings.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub presheaf: Presheaf,
    /// Columns spanning a complement of `I` in `K`, as vectors of the ambient presheaf.
    pub section: Vec<Matrix>,
    /// A left inverse of `section` that vanishes on `I`.
    pub projection: Vec<Matrix>,
}

/// Builds `K / I` for sub-presheaves `I ⊆ K` of `m`.
pub fn subquotient(c: &FinLinearCategory, m: &Presheaf, k: &[Subspace], i: &[Subspace]) -> Result<Subquotient> {
    let field = c.field();
    let mut section = Vec::new();
    let mut projection = Vec::new();
    for a in c.objs() {
        if !k[a].contains(&i[a])? {
            return Err(Error::Validation(format!("submodule not contained at {}", c.label(a))));
        }
        let comp = i[a].complement_in(&k[a])?;
        let rest = k[a].complement_in(&Subspace::full(field, m.dims[a]))?;
        let mut cols = i[a].basis_vectors();
        let (ni, nc) = (cols.len(), comp.len());
        cols.extend(comp.iter().cloned());
        cols.extend(rest);
        let full = Matrix::from_cols(field, m.dims[a], &cols)?;
        let inv = full.solve(&Matrix::identity(field, m.dims[a]))?.expect("basis matrix is invertible");
        projection.push(inv.select_rows(&(ni..ni + nc).collect::<Vec<_>>()));
        section.push(Matrix::from_cols(field, m.dims[a], &comp)?);
    }
    for a in c.objs() {
        for b in c.objs() {
            for f in c.basis_morphisms(a, b) {
                let act = m.act(&f);
                for (sub, what) in [(k, "K"), (i, "I")] {
                    let moved = sub[b].image(&act)?;
                    if !sub[a].contains(&moved)? {
                        return Err(Error::Validation(format!("{what} is not a sub-presheaf along {} -> {}", c.label(a), c.label(b))));
                    }
                }
            }
        }
    }
    let dims = section.iter().map(Matrix::cols).collect();
    let presheaf = Presheaf::from_fn(c, dims, |f| projection[f.src].mul(&m.act(f))?.mul(&section[f.tgt]))?;
    Ok(Subquotient { presheaf, section, projection })
}

/// Pointwise `ker q / im p` for `P --p--> M --q--> N`.
pub fn homology(c: &FinLinearCategory, m: &Presheaf, p: &PresheafMap, q: &PresheafMap) -> Result<Subquotient> {
    if !q.compose(p)?.is_zero() {
        return Err(Error::NotAComplex("q ∘ p is not zero".into()));
    }
    subquotient(c, m, &q.kernel_spaces(), &p.image_spaces())
}

pub fn kernel(c: &FinLinearCategory, src: &Presheaf, phi: &PresheafMap) -> Result<Subquotient> {
    let zero: Vec<Subspace> = src.dims.iter().map(|&d| Subspace::zero(c.field(), d)).collect();
    subquotient(c, src, &phi.kernel_spaces(), &zero)
}

pub fn cokernel(c: &FinLinearCategory, tgt: &Presheaf, phi: &PresheafMap) -> Result<Subquotient> {
    let full: Vec<Subspace> = tgt.dims.iter().map(|&d| Subspace::full(c.field(), d)).collect();
    subquotient(c, tgt, &full, &phi.image_spaces())
}

/// All presheaves with every value of dimension at most `max_dim`, over a prime field.
pub fn enumerate_presheaves(c: &FinLinearCategory, max_dim: usize, cap: usize) -> Result<Vec<Presheaf>> {
    if c.field().order().is_none() {
        return Err(Error::Unsupported("presheaf enumeration needs a finite field".into()));
    }
    let n = c.num_objects();
    let mut out = Vec::new();
    let mut dims = vec![0; n];
    loop {
        enumerate_with_dims(c, &dims, cap, &mut out)?;
        let mut k = 0;
        while k < n && dims[k] == max_dim {
            dims[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        dims[k] += 1;
    }
    Ok(out)
}

struct Slot {
    a: Obj,
    b: Obj,
    i: usize,
}

fn enumerate_with_dims(c: &FinLinearCategory, dims: &[usize], cap: usize, out: &mut Vec<Presheaf>) -> Result<()> {
    let field = c.field();
    let mut slots = Vec::new();
    let mut slot_of = std::collections::HashMap::new();
    for a in c.objs() {
        for b in c.objs() {
            if dims[a] * dims[b] == 0 {
                continue;
            }
            for i in 0..c.hom_dim(a, b) {
                slot_of.insert((a, b, i), slots.len());
                slots.push(Slot { a, b, i });
            }
        }
    }
    // Each constraint becomes checkable once its last slot is assigned.
    let mut checks: Vec<Vec<Constraint>> = (0..slots.len().max(1)).map(|_| Vec::new()).collect();
    for a in c.objs() {
        if dims[a] == 0 {
            continue;
        }
        let id = c.identity(a);
        let used: Vec<usize> = id.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| slot_of[&(a, a, i)]).collect();
        let last = used.iter().copied().max().unwrap_or(0);
        checks[last].push(Constraint::Identity(a));
    }
    for a in c.objs() {
        for b in c.objs() {
            for d in c.objs() {
                if dims[a] * dims[b] * dims[d] == 0 {
                    continue;
                }
                for f in 0..c.hom_dim(a, b) {
                    for g in 0..c.hom_dim(b, d) {
                        let gf = c.compose(&c.basis_morphism(b, d, g), &c.basis_morphism(a, b, f))?;
                        let mut last = slot_of[&(a, b, f)].max(slot_of[&(b, d, g)]);
                        for (k, x) in gf.coords.iter().enumerate() {
                            if !x.is_zero() {
                                last = last.max(slot_of[&(a, d, k)]);
                            }
                        }
                        checks[last].push(Constraint::Compose { a, b, d, f, g, gf });
                    }
                }
            }
        }
    }
    let mut action: Vec<Vec<Vec<Matrix>>> = c
        .objs()
        .map(|a| c.objs().map(|b| vec![Matrix::zeros(field, dims[a], dims[b]); c.hom_dim(a, b)]).collect())
        .collect();
    let choices: Vec<Vec<Matrix>> = slots
        .iter()
        .map(|s| {
            Ok(all_vectors(field, dims[s.a] * dims[s.b])?
                .into_iter()
                .map(|v| Matrix::new(field, dims[s.a], dims[s.b], v).expect("length matches"))
                .collect())
        })
        .collect::<Result<_>>()?;
    let ctx = Search { c, dims, slots: &slots, checks: &checks, choices: &choices, cap };
    if slots.is_empty() {
        out.push(Presheaf::new(c, dims.to_vec(), action)?);
        return Ok(());
    }
    ctx.go(0, &mut action, out)
}

enum Constraint {
    Identity(Obj),
    Compose { a: Obj, b: Obj, d: Obj, f: usize, g: usize, gf: Morphism },
}

struct Search<'a> {
    c: &'a FinLinearCategory,
    dims: &'a [usize],
    slots: &'a [Slot],
    checks: &'a [Vec<Constraint>],
    choices: &'a [Vec<Matrix>],
    cap: usize,
}

impl Search<'_> {
    fn act(&self, action: &[Vec<Vec<Matrix>>], m: &Morphism) -> Matrix {
        let field = self.c.field();
        let mut out = Matrix::zeros(field, self.dims[m.src], self.dims[m.tgt]);
        for (i, x) in m.coords.iter().enumerate() {
            if !x.is_zero() {
                out = out.add(&action[m.src][m.tgt][i].scale(x)).expect("same shape");
            }
        }
        out
    }

    fn holds(&self, action: &[Vec<Vec<Matrix>>], k: &Constraint) -> bool {
        match k {
            Constraint::Identity(a) => {
                self.act(action, &self.c.identity(*a)) == Matrix::identity(self.c.field(), self.dims[*a])
            }
            Constraint::Compose { a, b, d, f, g, gf } => {
                let lhs = self.act(action, gf);
                let rhs = action[*a][*b][*f].mul(&action[*b][*d][*g]).expect("shapes agree");
                lhs == rhs
            }
        }
    }

    fn go(&self, k: usize, action: &mut Vec<Vec<Vec<Matrix>>>, out: &mut Vec<Presheaf>) -> Result<()> {
        let s = &self.slots[k];
        for m in &self.choices[k] {
            action[s.a][s.b][s.i] = m.clone();
            if !self.checks[k].iter().all(|ch| self.holds(action, ch)) {
                continue;
            }
            if k + 1 == self.slots.len() {
                if out.len() >= self.cap {
                    return Err(Error::TooLarge(format!("more than {} presheaves", self.cap)));
                }
                out.push(Presheaf { field: self.c.field(), dims: self.dims.to_vec(), action: action.clone() });
            } else {
                self.go(k + 1, action, out)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincat::{a2_quiver, f2xf2, truncated_poly};

    #[test]
    fn representables_are_functors() {
        for c in [f2xf2(), truncated_poly(Field::Q, 3).unwrap(), a2_quiver(Field::F2)] {
            for x in c.objs() {
                assert!(Presheaf::representable(&c, x).is_functor(&c));
            }
        }
    }

    #[test]
    fn yoneda_dimension() {
        let c = a2_quiver(Field::F2);
        let all = enumerate_presheaves(&c, 2, 10_000).unwrap();
        for x in c.objs() {
            let y = Presheaf::representable(&c, x);
            for f in all.iter().take(40) {
                assert_eq!(nat_space(&c, &y, f).dim(), f.dim(x));
            }
        }
    }

    #[test]
    fn idempotent_modules_over_f2xf2() {
        // F(e1) an idempotent 2x2 matrix and F(e2) = 1 - F(e1): eight choices.
        let c = f2xf2();
        let all = enumerate_presheaves(&c, 2, 10_000).unwrap();
        assert_eq!(all.iter().filter(|p| p.dim(0) == 2).count(), 8);
        assert_eq!(all.iter().filter(|p| p.dim(0) == 1).count(), 2);
        assert!(all.iter().all(|p| p.is_functor(&c)));
    }

    #[test]
    fn homology_rejects_non_complex() {
        let c = f2xf2();
        let y = Presheaf::representable(&c, 0);
        let id = PresheafMap::identity(&y);
        assert!(matches!(homology(&c, &y, &id, &id), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn cokernel_of_multiplication_by_x() {
        let c = truncated_poly(Field::F2, 2).unwrap();
        let y = Presheaf::representable(&c, 0);
        let x = c.basis_morphism(0, 0, 1);
        let phi = PresheafMap { comps: vec![c.post_matrix(&x, 0)] };
        assert!(phi.is_natural(&c, &y, &y));
        let q = cokernel(&c, &y, &phi).unwrap();
        assert_eq!(q.presheaf.dim(0), 1);
        assert!(q.presheaf.is_functor(&c));
        let k = kernel(&c, &y, &phi).unwrap();
        assert_eq!(k.presheaf.dim(0), 1);
    }

    #[test]
    fn json_round_trip() {
        let c = a2_quiver(Field::F2);
        for p in enumerate_presheaves(&c, 1, 100).unwrap() {
            let back = Presheaf::from_json(&c, &p.to_json(&c)).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn non_functor_json_is_rejected() {
        let c = f2xf2();
        let v = json!({"values": {"*": 1}, "action": {"e1": [[1]], "e2": [[1]]}});
        assert!(matches!(Presheaf::from_json(&c, &v), Err(Error::Validation(_))));
    }
}
