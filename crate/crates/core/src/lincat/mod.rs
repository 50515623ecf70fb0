//! Finite linear categories given by structure constants.
//!
//! Objects are indices into a label list. A morphism `A -> B` is a
//! coordinate vector in the chosen basis of `hom(A, B)`. Composition is
//! stored either as a dense table of structure constants or, for graded
//! polynomial windows, computed from monomial products on demand.

mod builders;
mod formal;
mod graded;
mod json;
mod tensor;

use std::collections::HashMap;
use std::fmt;

pub use builders::{
    a2_module_category, a2_quiver, algebra_f2, f2xf2, from_algebra, from_quiver, graded_window, tensor_category,
    truncated_poly, Arrow, Relation,
};
pub use formal::{FormalMorphism, FormalSequence};
pub use graded::Graded;
pub use json::{category_from_json, category_to_json};
pub use tensor::{MonoidalStructure, TensorLaw};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};

pub type Obj = usize;

/// A morphism `src -> tgt` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: Obj,
    pub tgt: Obj,
    pub coords: Vec<Scalar>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!((self.src, self.tgt), (other.src, other.tgt), "adding morphisms between different objects");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Morphism { src: self.src, tgt: self.tgt, coords }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism { src: self.src, tgt: self.tgt, coords: self.coords.iter().map(|x| x * s).collect() }
    }

    pub fn neg(&self) -> Morphism {
        Morphism { src: self.src, tgt: self.tgt, coords: self.coords.iter().map(|x| -x).collect() }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Law {
    /// `table[(a*n + b)*n + c]` holds `g∘f` for basis `g: b->c`, `f: a->b`,
    /// laid out as `[(g*dim(a,b) + f)*dim(a,c) + k]`.
    Table(Vec<Vec<Scalar>>),
    Graded(Graded),
}

/// Outcome of [`FinLinearCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A linear category with finitely many objects and finite-dimensional homs.
#[derive(Clone, Debug)]
pub struct FinLinearCategory {
    field: Field,
    objects: Vec<String>,
    hom_dims: Vec<Vec<usize>>,
    basis_labels: Vec<Vec<Vec<String>>>,
    law: Law,
    identities: Vec<Vec<Scalar>>,
    monoidal: Option<MonoidalStructure>,
}

impl fmt::Display for FinLinearCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category over {} with objects {:?}", self.field, self.objects)
    }
}

impl FinLinearCategory {
    /// Builds a table-law category and checks shapes, without checking axioms.
    pub fn from_table(
        field: Field,
        objects: Vec<String>,
        hom_dims: Vec<Vec<usize>>,
        basis_labels: Option<Vec<Vec<Vec<String>>>>,
        table: HashMap<(Obj, Obj, Obj), Vec<Scalar>>,
        identities: Vec<Vec<Scalar>>,
    ) -> Result<FinLinearCategory> {
        let n = objects.len();
        if hom_dims.len() != n || hom_dims.iter().any(|r| r.len() != n) || identities.len() != n {
            return Err(Error::Shape("hom or identity data does not match object count".into()));
        }
        let mut flat = vec![Vec::new(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let want = hom_dims[b][c] * hom_dims[a][b] * hom_dims[a][c];
                    let got = table.get(&(a, b, c)).cloned().unwrap_or_else(|| vec![field.zero(); want]);
                    if got.len() != want {
                        return Err(Error::Shape(format!(
                            "composition table for ({}, {}, {}) has {} entries, expected {want}",
                            objects[a], objects[b], objects[c], got.len()
                        )));
                    }
                    flat[(a * n + b) * n + c] = got;
                }
            }
        }
        for (a, id) in identities.iter().enumerate() {
            if id.len() != hom_dims[a][a] {
                return Err(Error::Shape(format!("identity of {} has wrong length", objects[a])));
            }
        }
        let labels = basis_labels.unwrap_or_else(|| default_labels(&objects, &hom_dims));
        let cat = FinLinearCategory { field, objects, hom_dims, basis_labels: labels, law: Law::Table(flat), identities, monoidal: None };
        cat.check_labels()?;
        Ok(cat)
    }

    pub(crate) fn from_graded(g: Graded) -> FinLinearCategory {
        let objects = g.labels();
        let n = objects.len();
        let hom_dims: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| g.hom_dim(a, b)).collect()).collect();
        let basis_labels = (0..n)
            .map(|a| (0..n).map(|b| g.basis_labels(a, b)).collect())
            .collect();
        let identities = (0..n).map(|_| vec![g.field.one()]).collect();
        let monoidal = Some(MonoidalStructure::graded(&g));
        FinLinearCategory { field: g.field, objects, hom_dims, basis_labels, law: Law::Graded(g), identities, monoidal }
    }

    fn check_labels(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for a in self.objs() {
            for b in self.objs() {
                let ls = &self.basis_labels[a][b];
                if ls.len() != self.hom_dims[a][b] {
                    return Err(Error::Shape(format!("hom({}, {}) has {} labels", self.objects[a], self.objects[b], ls.len())));
                }
                for l in ls {
                    if seen.insert(l.clone(), ()).is_some() {
                        return Err(Error::Validation(format!("duplicate basis label {l:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objs(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn label(&self, a: Obj) -> &str {
        &self.objects[a]
    }

    pub fn obj(&self, label: &str) -> Result<Obj> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::Key(format!("unknown object {label:?}")))
    }

    pub fn hom_dim(&self, a: Obj, b: Obj) -> usize {
        self.hom_dims[a][b]
    }

    pub fn basis_label(&self, a: Obj, b: Obj, i: usize) -> &str {
        &self.basis_labels[a][b][i]
    }

    pub fn basis_labels(&self, a: Obj, b: Obj) -> &[String] {
        &self.basis_labels[a][b]
    }

    /// Looks up a basis morphism by label.
    pub fn basis_by_label(&self, label: &str) -> Result<(Obj, Obj, usize)> {
        for a in self.objs() {
            for b in self.objs() {
                if let Some(i) = self.basis_labels[a][b].iter().position(|l| l == label) {
                    return Ok((a, b, i));
                }
            }
        }
        Err(Error::Key(format!("unknown basis morphism {label:?}")))
    }

    pub fn monoidal(&self) -> Option<&MonoidalStructure> {
        self.monoidal.as_ref()
    }

    pub fn with_monoidal(mut self, m: MonoidalStructure) -> FinLinearCategory {
        self.monoidal = Some(m);
        self
    }

    pub fn graded(&self) -> Option<&Graded> {
        match &self.law {
            Law::Graded(g) => Some(g),
            Law::Table(_) => None,
        }
    }

    pub fn identity(&self, a: Obj) -> Morphism {
        Morphism { src: a, tgt: a, coords: self.identities[a].clone() }
    }

    pub fn zero(&self, a: Obj, b: Obj) -> Morphism {
        Morphism { src: a, tgt: b, coords: vec![self.field.zero(); self.hom_dims[a][b]] }
    }

    pub fn basis_morphism(&self, a: Obj, b: Obj, i: usize) -> Morphism {
        let mut m = self.zero(a, b);
        m.coords[i] = self.field.one();
        m
    }

    pub fn basis_morphisms(&self, a: Obj, b: Obj) -> Vec<Morphism> {
        (0..self.hom_dims[a][b]).map(|i| self.basis_morphism(a, b, i)).collect()
    }

    pub fn morphism(&self, a: Obj, b: Obj, coords: Vec<Scalar>) -> Result<Morphism> {
        if coords.len() != self.hom_dims[a][b] {
            return Err(Error::Shape(format!(
                "hom({}, {}) has dimension {}, got {} coordinates",
                self.objects[a], self.objects[b], self.hom_dims[a][b], coords.len()
            )));
        }
        if let Some(x) = coords.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        Ok(Morphism { src: a, tgt: b, coords })
    }

    pub fn morphism_ints(&self, a: Obj, b: Obj, coords: &[i64]) -> Result<Morphism> {
        self.morphism(a, b, coords.iter().map(|&x| self.field.int(x)).collect())
    }

    /// Every morphism `a -> b`; only for prime fields.
    pub fn all_morphisms(&self, a: Obj, b: Obj) -> Result<Vec<Morphism>> {
        Ok(all_vectors(self.field, self.hom_dims[a][b])?
            .into_iter()
            .map(|coords| Morphism { src: a, tgt: b, coords })
            .collect())
    }

    /// Adds `coef * (g_i ∘ f_j)` into `acc`, for basis `g_i: b->c`, `f_j: a->b`.
    fn add_basis_composite(&self, a: Obj, b: Obj, c: Obj, gi: usize, fj: usize, coef: &Scalar, acc: &mut [Scalar]) {
        match &self.law {
            Law::Table(t) => {
                let n = self.objects.len();
                let (dab, dac) = (self.hom_dims[a][b], self.hom_dims[a][c]);
                let entry = &t[(a * n + b) * n + c];
                let off = (gi * dab + fj) * dac;
                for k in 0..dac {
                    let x = &entry[off + k];
                    if !x.is_zero() {
                        acc[k] = &acc[k] + &(coef * x);
                    }
                }
            }
            Law::Graded(g) => {
                let k = g.product_index(a, b, c, gi, fj);
                acc[k] = &acc[k] + coef;
            }
        }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.tgt != g.src {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.objects[g.src], self.objects[g.tgt], self.objects[f.src], self.objects[f.tgt]
            )));
        }
        let (a, b, c) = (f.src, f.tgt, g.tgt);
        let mut acc = vec![self.field.zero(); self.hom_dims[a][c]];
        for (gi, x) in g.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (fj, y) in f.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                self.add_basis_composite(a, b, c, gi, fj, &(x * y), &mut acc);
            }
        }
        Ok(Morphism { src: a, tgt: c, coords: acc })
    }

    /// Matrix of `g ∘ -: hom(w, b) -> hom(w, c)` for `g: b -> c`.
    pub fn post_matrix(&self, g: &Morphism, w: Obj) -> Matrix {
        let (b, c) = (g.src, g.tgt);
        let cols: Vec<Vec<Scalar>> = (0..self.hom_dims[w][b])
            .map(|j| self.compose(g, &self.basis_morphism(w, b, j)).expect("composable").coords)
            .collect();
        Matrix::from_cols(self.field, self.hom_dims[w][c], &cols).expect("shapes agree")
    }

    /// Matrix of `- ∘ f: hom(b, y) -> hom(a, y)` for `f: a -> b`.
    pub fn pre_matrix(&self, f: &Morphism, y: Obj) -> Matrix {
        let (a, b) = (f.src, f.tgt);
        let cols: Vec<Vec<Scalar>> = (0..self.hom_dims[b][y])
            .map(|j| self.compose(&self.basis_morphism(b, y, j), f).expect("composable").coords)
            .collect();
        Matrix::from_cols(self.field, self.hom_dims[a][y], &cols).expect("shapes agree")
    }

    /// Checks associativity and the identity laws on basis morphisms.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let name = |a: Obj| self.objects[a].as_str();
        for a in self.objs() {
            for b in self.objs() {
                for f in self.basis_morphisms(a, b) {
                    let left = self.compose(&self.identity(b), &f).expect("composable");
                    let right = self.compose(&f, &self.identity(a)).expect("composable");
                    if left != f || right != f {
                        violations.push(format!("identity law fails for a basis morphism {} -> {}", name(a), name(b)));
                    }
                }
            }
        }
        for a in self.objs() {
            for b in self.objs() {
                for c in self.objs() {
                    for d in self.objs() {
                        if self.hom_dims[a][b] * self.hom_dims[b][c] * self.hom_dims[c][d] == 0 {
                            continue;
                        }
                        'outer: for f in self.basis_morphisms(a, b) {
                            for g in self.basis_morphisms(b, c) {
                                for h in self.basis_morphisms(c, d) {
                                    let l = self.compose(&self.compose(&h, &g).unwrap(), &f).unwrap();
                                    let r = self.compose(&h, &self.compose(&g, &f).unwrap()).unwrap();
                                    if l != r {
                                        violations.push(format!(
                                            "associativity fails on {} -> {} -> {} -> {}",
                                            name(a), name(b), name(c), name(d)
                                        ));
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some(m) = &self.monoidal {
            violations.extend(m.validate(self));
        }
        ValidationReport { violations }
    }

    /// Dense composition table for `(a, b, c)`, in the JSON layout `[g][f] -> coords`.
    pub fn composition_table(&self, a: Obj, b: Obj, c: Obj) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.hom_dims[b][c])
            .map(|gi| {
                (0..self.hom_dims[a][b])
                    .map(|fj| {
                        let mut acc = vec![self.field.zero(); self.hom_dims[a][c]];
                        self.add_basis_composite(a, b, c, gi, fj, &self.field.one(), &mut acc);
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn default_labels(objects: &[String], hom_dims: &[Vec<usize>]) -> Vec<Vec<Vec<String>>> {
    let n = objects.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..hom_dims[a][b]).map(|i| format!("{}->{}#{i}", objects[a], objects[b])).collect())
                .collect()
        })
        .collect()
}

/// All vectors of `F_p^n` in lexicographic order.
pub fn all_vectors(field: Field, n: usize) -> Result<Vec<Vec<Scalar>>> {
    let elems = field.elements()?;
    let total = (elems.len() as u128).checked_pow(n as u32).filter(|&t| t <= 1 << 22);
    if total.is_none() {
        return Err(Error::TooLarge(format!("{field}^{n} has too many vectors to list")));
    }
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    Ok(out)
}
