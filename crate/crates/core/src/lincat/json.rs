use std::collections::HashMap;

use serde_json::{json, Map, Value};

use super::{FinLinearCategory, MonoidalStructure, Obj, TensorLaw};
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar};

fn coeffs(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

fn pair_key(c: &FinLinearCategory, a: Obj, b: Obj) -> String {
    format!("{}|{}", c.label(a), c.label(b))
}

/// Canonical JSON form; keys are sorted, so output is byte-stable.
pub fn category_to_json(c: &FinLinearCategory) -> Value {
    let mut hom = Map::new();
    let mut compose = Vec::new();
    let mut identity = Map::new();
    for a in c.objs() {
        identity.insert(c.label(a).into(), coeffs(&c.identity(a).coords));
        for b in c.objs() {
            hom.insert(pair_key(c, a, b), json!({"dim": c.hom_dim(a, b), "basis": c.basis_labels(a, b)}));
            for d in c.objs() {
                if c.hom_dim(a, b) * c.hom_dim(b, d) * c.hom_dim(a, d) == 0 {
                    continue;
                }
                let table: Vec<Value> = c
                    .composition_table(a, b, d)
                    .iter()
                    .map(|row| Value::Array(row.iter().map(|v| coeffs(v)).collect()))
                    .collect();
                compose.push(json!({"triple": [c.label(a), c.label(b), c.label(d)], "table": table}));
            }
        }
    }
    let mut out = json!({
        "field": c.field(),
        "objects": c.object_labels(),
        "hom": hom,
        "compose": compose,
        "identity": identity,
    });
    if let Some(m) = c.monoidal() {
        out["monoidal"] = monoidal_to_json(c, m);
    }
    out
}

fn monoidal_to_json(c: &FinLinearCategory, m: &MonoidalStructure) -> Value {
    let mut tensor = Map::new();
    let mut morphisms = Vec::new();
    let mut braiding = Map::new();
    let objs: Vec<Obj> = c.objs().collect();
    for &a in &objs {
        for &b in &objs {
            let Some(ab) = m.tensor_obj_opt(a, b) else { continue };
            tensor.insert(pair_key(c, a, b), Value::String(c.label(ab).into()));
            if let Some(s) = m.braiding(c, a, b) {
                braiding.insert(pair_key(c, a, b), coeffs(&s.coords));
            }
            for &a2 in &objs {
                for &b2 in &objs {
                    let Some(ab2) = m.tensor_obj_opt(a2, b2) else { continue };
                    if c.hom_dim(a, a2) * c.hom_dim(b, b2) * c.hom_dim(ab, ab2) == 0 {
                        continue;
                    }
                    let table: Vec<Value> = c
                        .basis_morphisms(a, a2)
                        .iter()
                        .map(|f| {
                            Value::Array(
                                c.basis_morphisms(b, b2)
                                    .iter()
                                    .map(|g| coeffs(&m.tensor_mor(c, f, g).expect("tensor defined").coords))
                                    .collect(),
                            )
                        })
                        .collect();
                    morphisms.push(json!({"quad": [c.label(a), c.label(b), c.label(a2), c.label(b2)], "table": table}));
                }
            }
        }
    }
    let mut out = json!({"unit": c.label(m.unit), "tensor": tensor, "morphisms": morphisms});
    if m.has_braiding() {
        out["braiding"] = Value::Object(braiding);
    }
    out
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

fn parse_coeffs(field: Field, v: &Value, len: usize, what: &str) -> Result<Vec<Scalar>> {
    let arr = as_array(v, what)?;
    if arr.len() != len {
        return Err(Error::Shape(format!("{what} has {} coefficients, expected {len}", arr.len())));
    }
    arr.iter().map(|x| field.parse_json(x)).collect()
}

fn split_pair(c_labels: &[String], key: &str) -> Result<(Obj, Obj)> {
    let (a, b) = key.split_once('|').ok_or_else(|| Error::Parse(format!("bad pair key {key:?}")))?;
    let find = |s: &str| c_labels.iter().position(|o| o == s).ok_or_else(|| Error::Key(format!("unknown object {s:?}")));
    Ok((find(a)?, find(b)?))
}

/// Parses the category schema, checking shapes but not the category axioms.
pub fn category_from_json(v: &Value) -> Result<FinLinearCategory> {
    let field: Field = serde_json::from_value(get(v, "field")?.clone()).map_err(|e| Error::Parse(format!("field: {e}")))?;
    if let Field::Fp { p } = field {
        Field::fp(p)?;
    }
    let objects: Vec<String> = as_array(get(v, "objects")?, "objects")?
        .iter()
        .map(|o| as_str(o, "object label").map(String::from))
        .collect::<Result<_>>()?;
    if objects.iter().any(|o| o.contains('|')) {
        return Err(Error::Parse("object labels may not contain '|'".into()));
    }
    let n = objects.len();
    let find = |s: &str| objects.iter().position(|o| o == s).ok_or_else(|| Error::Key(format!("unknown object {s:?}")));
    let mut hom_dims = vec![vec![0usize; n]; n];
    let mut labels: Vec<Vec<Vec<String>>> = vec![vec![Vec::new(); n]; n];
    let hom = get(v, "hom")?.as_object().ok_or_else(|| Error::Parse("hom must be an object".into()))?;
    for (key, h) in hom {
        let (a, b) = split_pair(&objects, key)?;
        let dim = get(h, "dim")?.as_u64().ok_or_else(|| Error::Parse(format!("dim of {key} must be a count")))? as usize;
        hom_dims[a][b] = dim;
        labels[a][b] = match h.get("basis") {
            Some(ls) => as_array(ls, "basis")?.iter().map(|l| as_str(l, "basis label").map(String::from)).collect::<Result<_>>()?,
            None => (0..dim).map(|i| format!("{}->{}#{i}", objects[a], objects[b])).collect(),
        };
    }
    let mut table = HashMap::new();
    for entry in as_array(get(v, "compose")?, "compose")? {
        let triple = as_array(get(entry, "triple")?, "triple")?;
        if triple.len() != 3 {
            return Err(Error::Parse("triple must have three objects".into()));
        }
        let t: Vec<Obj> = triple.iter().map(|x| find(as_str(x, "object")?)).collect::<Result<_>>()?;
        let (a, b, c) = (t[0], t[1], t[2]);
        let rows = as_array(get(entry, "table")?, "table")?;
        if rows.len() != hom_dims[b][c] {
            return Err(Error::Shape(format!("table for {triple:?} has {} rows", rows.len())));
        }
        let mut flat = Vec::new();
        for row in rows {
            let cells = as_array(row, "table row")?;
            if cells.len() != hom_dims[a][b] {
                return Err(Error::Shape(format!("table row for {triple:?} has {} cells", cells.len())));
            }
            for cell in cells {
                flat.extend(parse_coeffs(field, cell, hom_dims[a][c], "composite")?);
            }
        }
        if table.insert((a, b, c), flat).is_some() {
            return Err(Error::Parse(format!("duplicate triple {triple:?}")));
        }
    }
    let ids = get(v, "identity")?;
    let identities = (0..n)
        .map(|a| parse_coeffs(field, get(ids, &objects[a])?, hom_dims[a][a], "identity"))
        .collect::<Result<Vec<_>>>()?;
    let cat = FinLinearCategory::from_table(field, objects.clone(), hom_dims, Some(labels), table, identities)?;
    match v.get("monoidal") {
        Some(m) => Ok(cat.clone().with_monoidal(monoidal_from_json(&cat, m)?)),
        None => Ok(cat),
    }
}

fn monoidal_from_json(c: &FinLinearCategory, v: &Value) -> Result<MonoidalStructure> {
    let objects = c.object_labels();
    let unit = c.obj(as_str(get(v, "unit")?, "unit")?)?;
    let n = c.num_objects();
    let mut tensor = vec![vec![None; n]; n];
    for (key, t) in get(v, "tensor")?.as_object().ok_or_else(|| Error::Parse("tensor must be an object".into()))? {
        let (a, b) = split_pair(objects, key)?;
        tensor[a][b] = Some(c.obj(as_str(t, "tensor object")?)?);
    }
    let mut table = HashMap::new();
    for entry in as_array(get(v, "morphisms")?, "morphisms")? {
        let quad: Vec<Obj> = as_array(get(entry, "quad")?, "quad")?
            .iter()
            .map(|x| c.obj(as_str(x, "object")?))
            .collect::<Result<_>>()?;
        if quad.len() != 4 {
            return Err(Error::Parse("quad must have four objects".into()));
        }
        let (a, b, a2, b2) = (quad[0], quad[1], quad[2], quad[3]);
        let (Some(ab), Some(ab2)) = (tensor[a][b], tensor[a2][b2]) else {
            return Err(Error::Parse("tensor table for undefined tensor product".into()));
        };
        let d = c.hom_dim(ab, ab2);
        let mut flat = Vec::new();
        let rows = as_array(get(entry, "table")?, "table")?;
        if rows.len() != c.hom_dim(a, a2) {
            return Err(Error::Shape("tensor table has wrong row count".into()));
        }
        for row in rows {
            let cells = as_array(row, "table row")?;
            if cells.len() != c.hom_dim(b, b2) {
                return Err(Error::Shape("tensor table row has wrong cell count".into()));
            }
            for cell in cells {
                flat.extend(parse_coeffs(c.field(), cell, d, "tensor")?);
            }
        }
        table.insert((a, b, a2, b2), flat);
    }
    let braiding = match v.get("braiding") {
        None => None,
        Some(bv) => {
            let mut map = HashMap::new();
            for (key, coords) in bv.as_object().ok_or_else(|| Error::Parse("braiding must be an object".into()))? {
                let (a, b) = split_pair(objects, key)?;
                let (Some(ab), Some(ba)) = (tensor[a][b], tensor[b][a]) else {
                    return Err(Error::Parse("braiding on undefined tensor product".into()));
                };
                map.insert((a, b), parse_coeffs(c.field(), coords, c.hom_dim(ab, ba), "braiding")?);
            }
            Some(map)
        }
    };
    Ok(MonoidalStructure::new(unit, tensor, TensorLaw::Table(table), braiding))
}
