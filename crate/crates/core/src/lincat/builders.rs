use std::collections::HashMap;

use super::{FinLinearCategory, Graded, MonoidalStructure, Obj};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar, Subspace};

/// One-object category of a finite-dimensional algebra with `g ∘ f = g·f`.
///
/// `mult[i][j]` gives the coordinates of `e_i · e_j`. The unit is solved for.
pub fn from_algebra(field: Field, labels: Vec<String>, mult: Vec<Vec<Vec<Scalar>>>) -> Result<FinLinearCategory> {
    let d = labels.len();
    if mult.len() != d || mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
        return Err(Error::Shape("multiplication table does not match basis size".into()));
    }
    // Unknown unit u: sum_i u_i e_i e_j = e_j and sum_i u_i e_j e_i = e_j.
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..d {
        for k in 0..d {
            rows.push((0..d).map(|i| mult[i][j][k].clone()).collect::<Vec<_>>());
            rhs.push(vec![if j == k { field.one() } else { field.zero() }]);
            rows.push((0..d).map(|i| mult[j][i][k].clone()).collect());
            rhs.push(vec![if j == k { field.one() } else { field.zero() }]);
        }
    }
    let unit = Matrix::from_rows(field, rows)?
        .solve(&Matrix::from_rows(field, rhs)?)?
        .ok_or_else(|| Error::Validation("algebra has no unit".into()))?
        .col(0);
    let table: Vec<Scalar> = mult.into_iter().flatten().flatten().collect();
    let mut t = HashMap::new();
    t.insert((0, 0, 0), table);
    let labels = vec![vec![labels]];
    let c = FinLinearCategory::from_table(field, vec!["*".into()], vec![vec![d]], Some(labels), t, vec![unit])?;
    let report = c.validate();
    if !report.ok() {
        return Err(Error::Validation(report.violations.join("; ")));
    }
    Ok(c)
}

fn commutative(c: FinLinearCategory) -> FinLinearCategory {
    c.with_monoidal(MonoidalStructure::commutative())
}

/// The field `F_2` as a one-object category.
pub fn algebra_f2() -> FinLinearCategory {
    let f = Field::F2;
    commutative(from_algebra(f, vec!["1".into()], vec![vec![vec![f.one()]]]).expect("F2 is an algebra"))
}

/// `F_2 × F_2` with idempotent basis `e1, e2`.
pub fn f2xf2() -> FinLinearCategory {
    let f = Field::F2;
    let v = |a: i64, b: i64| vec![f.int(a), f.int(b)];
    let mult = vec![vec![v(1, 0), v(0, 0)], vec![v(0, 0), v(0, 1)]];
    commutative(from_algebra(f, vec!["e1".into(), "e2".into()], mult).expect("F2xF2 is an algebra"))
}

/// `F[x]/(x^k)` with basis `1, x, ..., x^(k-1)`.
pub fn truncated_poly(field: Field, k: usize) -> Result<FinLinearCategory> {
    if k == 0 {
        return Err(Error::Validation("zero ring has no basis".into()));
    }
    let mult = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|l| if i + j == l { field.one() } else { field.zero() }).collect())
                .collect()
        })
        .collect();
    let labels = (0..k)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    Ok(commutative(from_algebra(field, labels, mult)?))
}

/// Arrow of a quiver.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

impl Arrow {
    pub fn new(name: &str, src: &str, tgt: &str) -> Arrow {
        Arrow { name: name.into(), src: src.into(), tgt: tgt.into() }
    }
}

/// Linear combination of paths, each path listed in traversal order.
pub type Relation = Vec<(Scalar, Vec<String>)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    src: Obj,
    tgt: Obj,
    arrows: Vec<usize>,
}

const MAX_PATH_LEN: usize = 24;

/// Path category of a quiver modulo homogeneous relations.
///
/// Fails with `NotFinite` if nonzero paths persist past a fixed length.
pub fn from_quiver(field: Field, vertices: &[&str], arrows: &[Arrow], relations: &[Relation]) -> Result<FinLinearCategory> {
    let n = vertices.len();
    let vidx = |s: &str| vertices.iter().position(|v| *v == s).ok_or_else(|| Error::Key(format!("unknown vertex {s:?}")));
    let mut arr = Vec::new();
    for a in arrows {
        arr.push((a.name.clone(), vidx(&a.src)?, vidx(&a.tgt)?));
    }
    let aidx = |s: &str| arr.iter().position(|a| a.0 == s).ok_or_else(|| Error::Key(format!("unknown arrow {s:?}")));

    // Relations as (src, tgt, len, terms).
    let mut rels = Vec::new();
    for r in relations {
        let mut terms = Vec::new();
        for (coef, path) in r {
            if path.is_empty() {
                return Err(Error::Validation("relations must not involve identity paths".into()));
            }
            let ids = path.iter().map(|s| aidx(s)).collect::<Result<Vec<_>>>()?;
            for w in ids.windows(2) {
                if arr[w[0]].2 != arr[w[1]].1 {
                    return Err(Error::Validation(format!("relation path {path:?} is not composable")));
                }
            }
            terms.push((coef.clone(), Path { src: arr[ids[0]].1, tgt: arr[*ids.last().unwrap()].2, arrows: ids }));
        }
        let Some(first) = terms.first().map(|t| t.1.clone()) else { continue };
        if terms.iter().any(|t| t.1.src != first.src || t.1.tgt != first.tgt || t.1.arrows.len() != first.arrows.len()) {
            return Err(Error::Validation("relations must be homogeneous in endpoints and length".into()));
        }
        rels.push((first.src, first.tgt, first.arrows.len(), terms));
    }

    // levels[l] = all paths of length l.
    let mut levels: Vec<Vec<Path>> = vec![(0..n).map(|v| Path { src: v, tgt: v, arrows: vec![] }).collect()];
    // basis[l][(a,b)] = kept paths; reducer[l][(a,b)] = (path list, matrix [kept | ideal]).
    let mut kept: Vec<HashMap<(Obj, Obj), Vec<Path>>> = Vec::new();
    let mut ideal: Vec<HashMap<(Obj, Obj), Subspace>> = Vec::new();
    loop {
        let l = levels.len() - 1;
        let paths = &levels[l];
        let mut by_pair: HashMap<(Obj, Obj), Vec<Path>> = HashMap::new();
        for p in paths {
            by_pair.entry((p.src, p.tgt)).or_default().push(p.clone());
        }
        let mut kept_l = HashMap::new();
        let mut ideal_l = HashMap::new();
        for (&(a, b), ps) in &by_pair {
            let pos: HashMap<&Path, usize> = ps.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let mut gens = Vec::new();
            for (ra, rb, rl, terms) in &rels {
                if *rl > l {
                    continue;
                }
                for s in 0..=(l - rl) {
                    for u in levels[s].iter().filter(|u| u.src == a && u.tgt == *ra) {
                        for w in levels[l - rl - s].iter().filter(|w| w.src == *rb && w.tgt == b) {
                            let mut v = vec![field.zero(); ps.len()];
                            for (coef, t) in terms {
                                let arrows: Vec<usize> = u.arrows.iter().chain(&t.arrows).chain(&w.arrows).copied().collect();
                                let i = pos[&Path { src: a, tgt: b, arrows }];
                                v[i] = &v[i] + coef;
                            }
                            gens.push(v);
                        }
                    }
                }
            }
            let mut span = Subspace::from_vectors(field, ps.len(), &gens)?;
            let ideal_span = span.clone();
            let mut keep = Vec::new();
            for (i, p) in ps.iter().enumerate() {
                let mut e = vec![field.zero(); ps.len()];
                e[i] = field.one();
                if !span.contains_vec(&e) {
                    span = span.sum(&Subspace::from_vectors(field, ps.len(), &[e])?)?;
                    keep.push(p.clone());
                }
            }
            kept_l.insert((a, b), keep);
            ideal_l.insert((a, b), ideal_span);
        }
        let done = kept_l.values().all(Vec::is_empty);
        kept.push(kept_l);
        ideal.push(ideal_l);
        if done {
            break;
        }
        if l >= MAX_PATH_LEN {
            return Err(Error::NotFinite(format!("nonzero paths of length {l} remain")));
        }
        let next: Vec<Path> = levels[l]
            .iter()
            .flat_map(|p| {
                arr.iter().enumerate().filter(move |(_, a)| a.1 == p.tgt).map(move |(i, a)| {
                    let mut arrows = p.arrows.clone();
                    arrows.push(i);
                    Path { src: p.src, tgt: a.2, arrows }
                })
            })
            .collect();
        if next.len() > 200_000 {
            return Err(Error::NotFinite("path count explodes".into()));
        }
        levels.push(next);
    }

    // hom basis = kept paths over all lengths.
    let mut hom_basis: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
    for kl in &kept {
        let mut pairs: Vec<_> = kl.keys().copied().collect();
        pairs.sort();
        for (a, b) in pairs {
            hom_basis[a][b].extend(kl[&(a, b)].iter().cloned());
        }
    }
    // Normal form of a path: coordinates in hom_basis[a][b].
    let normal_form = |p: &Path| -> Result<Vec<Scalar>> {
        let (a, b, l) = (p.src, p.tgt, p.arrows.len());
        let mut out = vec![field.zero(); hom_basis[a][b].len()];
        if l >= kept.len() {
            return Ok(out);
        }
        let Some(keep) = kept[l].get(&(a, b)) else { return Ok(out) };
        let ps: Vec<&Path> = levels[l].iter().filter(|q| q.src == a && q.tgt == b).collect();
        let pos = |q: &Path| ps.iter().position(|r| *r == q).expect("path listed");
        let dim = ps.len();
        let unit = |i: usize| {
            let mut e = vec![field.zero(); dim];
            e[i] = field.one();
            e
        };
        let mut cols: Vec<Vec<Scalar>> = keep.iter().map(|q| unit(pos(q))).collect();
        cols.extend(ideal[l][&(a, b)].basis_vectors());
        let m = Matrix::from_cols(field, dim, &cols)?;
        let x = m
            .solve(&Matrix::column_vector(field, unit(pos(p))))?
            .expect("kept paths and ideal span the path space");
        let offset: usize = hom_basis[a][b].iter().take_while(|q| q.arrows.len() < l).count();
        for i in 0..keep.len() {
            out[offset + i] = x[(i, 0)].clone();
        }
        Ok(out)
    };

    let hom_dims: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| hom_basis[a][b].len()).collect()).collect();
    let mut table = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut entry = Vec::new();
                for g in &hom_basis[b][c] {
                    for f in &hom_basis[a][b] {
                        let arrows: Vec<usize> = f.arrows.iter().chain(&g.arrows).copied().collect();
                        entry.extend(normal_form(&Path { src: a, tgt: c, arrows })?);
                    }
                }
                table.insert((a, b, c), entry);
            }
        }
    }
    let identities = (0..n)
        .map(|a| normal_form(&Path { src: a, tgt: a, arrows: vec![] }))
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    hom_basis[a][b]
                        .iter()
                        .map(|p| {
                            if p.arrows.is_empty() {
                                format!("1_{}", vertices[a])
                            } else {
                                p.arrows.iter().rev().map(|&i| arr[i].0.as_str()).collect::<Vec<_>>().join(".")
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let objects = vertices.iter().map(|v| v.to_string()).collect();
    let c = FinLinearCategory::from_table(field, objects, hom_dims, Some(labels), table, identities)?;
    let report = c.validate();
    if !report.ok() {
        return Err(Error::Validation(report.violations.join("; ")));
    }
    Ok(c)
}

/// `A_2`: a single arrow `a: v1 -> v2`.
pub fn a2_quiver(field: Field) -> FinLinearCategory {
    from_quiver(field, &["v1", "v2"], &[Arrow::new("a", "v1", "v2")], &[]).expect("A2 is finite")
}

/// Indecomposable representations `S2 -i-> P -pi-> S1` of `A_2`, with `pi ∘ i = 0`.
pub fn a2_module_category(field: Field) -> Result<FinLinearCategory> {
    let rel: Relation = vec![(field.one(), vec!["i".into(), "pi".into()])];
    from_quiver(field, &["S2", "P", "S1"], &[Arrow::new("i", "S2", "P"), Arrow::new("pi", "P", "S1")], &[rel])
}

/// Graded window `S<lo> .. S<hi>` over `k[x0..xn]`, with its partial tensor product.
pub fn graded_window(field: Field, n: usize, lo: i64, hi: i64) -> Result<FinLinearCategory> {
    if lo > 0 || hi < 0 {
        return Err(Error::Validation("the window must contain S<0>".into()));
    }
    if hi - lo > 64 {
        return Err(Error::TooLarge(format!("window of width {}", hi - lo)));
    }
    Ok(FinLinearCategory::from_graded(Graded::new(field, n, lo, hi)))
}

/// Kelly tensor product: objects are pairs, homs are tensor products of homs.
pub fn tensor_category(a: &FinLinearCategory, b: &FinLinearCategory) -> Result<FinLinearCategory> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let (na, nb) = (a.num_objects(), b.num_objects());
    let n = na * nb;
    let pair = |o: Obj| (o / nb, o % nb);
    let objects: Vec<String> = (0..n).map(|o| format!("({},{})", a.label(pair(o).0), b.label(pair(o).1))).collect();
    let dim = |x: Obj, y: Obj| {
        let ((x1, x2), (y1, y2)) = (pair(x), pair(y));
        a.hom_dim(x1, y1) * b.hom_dim(x2, y2)
    };
    let hom_dims: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| dim(x, y)).collect()).collect();
    let mut table = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (tx, ty, tz) = (pair(x), pair(y), pair(z));
                let ta = a.composition_table(tx.0, ty.0, tz.0);
                let tb = b.composition_table(tx.1, ty.1, tz.1);
                let mut entry = Vec::new();
                let (dyz2, dxy2) = (b.hom_dim(ty.1, tz.1), b.hom_dim(tx.1, ty.1));
                for g in 0..dim(y, z) {
                    for f in 0..dim(x, y) {
                        let (g1, g2) = (g / dyz2, g % dyz2);
                        let (f1, f2) = (f / dxy2, f % dxy2);
                        for u in &ta[g1][f1] {
                            for v in &tb[g2][f2] {
                                entry.push(u * v);
                            }
                        }
                    }
                }
                table.insert((x, y, z), entry);
            }
        }
    }
    let identities = (0..n)
        .map(|x| {
            let (x1, x2) = pair(x);
            let (ia, ib) = (a.identity(x1).coords, b.identity(x2).coords);
            ia.iter().flat_map(|u| ib.iter().map(move |v| u * v)).collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let ((x1, x2), (y1, y2)) = (pair(x), pair(y));
                    a.basis_labels(x1, y1)
                        .iter()
                        .flat_map(|l1| b.basis_labels(x2, y2).iter().map(move |l2| format!("{l1}⊗{l2}")))
                        .collect()
                })
                .collect()
        })
        .collect();
    FinLinearCategory::from_table(field, objects, hom_dims, Some(labels), table, identities)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_homs() {
        let c = a2_quiver(Field::F2);
        let (v1, v2) = (c.obj("v1").unwrap(), c.obj("v2").unwrap());
        assert_eq!(c.hom_dim(v1, v2), 1);
        assert_eq!(c.hom_dim(v2, v1), 0);
        assert_eq!(c.hom_dim(v1, v1), 1);
        assert_eq!(c.basis_label(v1, v2, 0), "a");
    }

    #[test]
    fn loop_with_square_zero_is_dual_numbers() {
        let f = Field::F2;
        let rel: Relation = vec![(f.one(), vec!["x".into(), "x".into()])];
        let c = from_quiver(f, &["v"], &[Arrow::new("x", "v", "v")], &[rel]).unwrap();
        assert_eq!(c.hom_dim(0, 0), 2);
        let x = c.basis_morphism(0, 0, 1);
        assert!(c.compose(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn free_loop_is_not_finite() {
        let err = from_quiver(Field::F2, &["v"], &[Arrow::new("x", "v", "v")], &[]).unwrap_err();
        assert!(matches!(err, Error::NotFinite(_)));
    }

    #[test]
    fn module_category_relation() {
        let c = a2_module_category(Field::F2).unwrap();
        let (s2, p, s1) = (c.obj("S2").unwrap(), c.obj("P").unwrap(), c.obj("S1").unwrap());
        assert_eq!(c.hom_dim(s2, p), 1);
        assert_eq!(c.hom_dim(p, s1), 1);
        assert_eq!(c.hom_dim(s2, s1), 0);
    }

    #[test]
    fn graded_hom_dimensions() {
        let c = graded_window(Field::Q, 1, -2, 2).unwrap();
        let s = |j: i64| c.obj(&format!("S<{j}>")).unwrap();
        assert_eq!(c.hom_dim(s(1), s(0)), 2);
        assert_eq!(c.hom_dim(s(0), s(1)), 0);
        assert_eq!(c.hom_dim(s(2), s(-2)), 5);
        let c2 = graded_window(Field::Q, 2, 0, 2).unwrap();
        assert_eq!(c2.hom_dim(c2.obj("S<2>").unwrap(), c2.obj("S<0>").unwrap()), 6);
        assert!(graded_window(Field::Q, 1, 1, 3).is_err());
    }

    #[test]
    fn graded_window_is_a_monoidal_category() {
        let c = graded_window(Field::F2, 1, -1, 2).unwrap();
        let report = c.validate();
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn kelly_product_dimensions() {
        let t = tensor_category(&f2xf2(), &truncated_poly(Field::F2, 2).unwrap()).unwrap();
        assert_eq!(t.num_objects(), 1);
        assert_eq!(t.hom_dim(0, 0), 4);
        assert!(t.validate().ok());
    }

    #[test]
    fn algebra_without_unit_is_rejected() {
        let f = Field::F2;
        let err = from_algebra(f, vec!["n".into()], vec![vec![vec![f.zero()]]]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn non_associative_algebra_is_rejected() {
        let f = Field::Q;
        let v = |a: i64, b: i64, c: i64| vec![f.int(a), f.int(b), f.int(c)];
        // basis 1, a, b with a*a = b, b*a = a, a*b = 0: (a*a)*a != a*(a*a)
        let mult = vec![
            vec![v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)],
            vec![v(0, 1, 0), v(0, 0, 1), v(0, 0, 0)],
            vec![v(0, 0, 1), v(0, 1, 0), v(0, 0, 0)],
        ];
        let err = from_algebra(f, vec!["1".into(), "a".into(), "b".into()], mult).unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("associativity")));
    }
}
