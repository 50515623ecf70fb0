//! Acceptance criteria 1 to 12. Prints one line per criterion and exits
//! nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use addtop::corpus::{bundled, cubic_truncation, f2, f2xf2_instance, kelly};
use addtop::exactla::{Field, Matrix, Scalar};
use addtop::lincat::{graded_window, FinLinearCategory, Morphism, Obj};
use addtop::monoidal::{
    classify_u, cofinite_monomial_family, compare_tv, factorization_monoidal_check, graded_generator, monoidal_check,
    monoidal_check_pretopology, proj_hom, tv_pretopology, UClass,
};
use addtop::presheaf::{enumerate_presheaves, kernel, nat_space, Presheaf, PresheafMap};
use addtop::pretop::{generating_pretopology, in_pre_prime, is_sheaf_via, top_of, Pretopology};
use addtop::properties::subcanonical_check;
use addtop::sheafify::{is_separated, is_sheaf, kernel_of_z, kernel_of_z_via_unit, sheafify, sigma, sigma_map};
use addtop::sieve::generated_sieve;
use addtop::topology::{axiom_check, enumerate_topologies, join_meet, Topology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_SIEVES: usize = 1 << 12;
const PRESHEAF_CAP: usize = 1 << 14;
const SEED: u64 = 0x5eed;
const SAMPLED_PAIRS: usize = 100;
const PROJ_HOM_BUDGET: Duration = Duration::from_secs(30);
const TOTAL_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn presheaves(c: &FinLinearCategory) -> Vec<Presheaf> {
    enumerate_presheaves(c, 2, PRESHEAF_CAP).expect("presheaf enumeration")
}

fn topologies(c: &FinLinearCategory) -> Vec<Topology> {
    enumerate_topologies(c, MAX_SIEVES).expect("topology enumeration")
}

fn criterion_1() -> Outcome {
    for inst in bundled() {
        let c = &inst.category;
        for (name, t) in [("coarsest", Topology::coarsest(c)), ("finest", Topology::finest(c))] {
            let r = axiom_check(c, &t, &[], MAX_SIEVES).map_err(|e| e.to_string())?;
            check(r.ok(), format!("{} {name} failed the axioms", inst.name))?;
        }
    }
    let k = addtop::corpus::a2();
    let c = &k.category;
    let (v1, v2) = (c.obj("v1").unwrap(), c.obj("v2").unwrap());
    let corrupted = Topology::from_min_sieves(c, vec![addtop::sieve::Sieve::maximal(c, v1), addtop::sieve::Sieve::zero(c, v2)])
        .map_err(|e| e.to_string())?;
    let r = axiom_check(c, &corrupted, &[], MAX_SIEVES).map_err(|e| e.to_string())?;
    let witness = r.stability.as_ref().ok_or("corrupted family passed T2")?;
    check(witness.morphism == c.basis_morphism(v1, v2, 0), "unexpected T2 witness")?;
    Ok(format!("6 categories x 2 trivial topologies; corrupted A2 family rejected with T2 witness {}", c.basis_label(v1, v2, 0)))
}

/// Covering families on a one-object category, found without minimal sieves.
fn brute_force_families(c: &FinLinearCategory) -> (Vec<BTreeSet<usize>>, Vec<BTreeSet<BTreeSet<usize>>>) {
    let homs = c.all_morphisms(0, 0).unwrap();
    let n = homs.len();
    let index = |m: &Morphism| homs.iter().position(|h| h.coords == m.coords).unwrap();
    let comp: Vec<Vec<usize>> =
        homs.iter().map(|f| homs.iter().map(|g| index(&c.compose(f, g).unwrap())).collect()).collect();
    let add: Vec<Vec<usize>> = homs.iter().map(|f| homs.iter().map(|g| index(&f.add(g))).collect()).collect();
    let zero = index(&c.zero(0, 0));
    let sieves: Vec<BTreeSet<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| {
            s.contains(&zero)
                && s.iter().all(|&f| s.iter().all(|&g| s.contains(&add[f][g])))
                && s.iter().all(|&f| (0..n).all(|g| s.contains(&comp[f][g])))
        })
        .collect();
    let pullback = |s: &BTreeSet<usize>, f: usize| (0..n).filter(|&g| s.contains(&comp[f][g])).collect::<BTreeSet<usize>>();
    let maximal: BTreeSet<usize> = (0..n).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << sieves.len() {
        let fam: BTreeSet<BTreeSet<usize>> = (0..sieves.len()).filter(|i| mask >> i & 1 == 1).map(|i| sieves[i].clone()).collect();
        let up_closed = fam.iter().all(|r| sieves.iter().all(|s| !r.is_subset(s) || fam.contains(s)));
        let t1 = fam.contains(&maximal);
        let t2 = fam.iter().all(|r| (0..n).all(|f| fam.contains(&pullback(r, f))));
        let t3 = sieves.iter().all(|s| {
            let local = fam.iter().any(|r| r.iter().all(|&f| fam.contains(&pullback(s, f))));
            !local || fam.contains(s)
        });
        if up_closed && t1 && t2 && t3 {
            out.push(fam);
        }
    }
    (sieves, out)
}

fn criterion_2() -> Outcome {
    let mut counts = Vec::new();
    for (inst, want) in [(f2xf2_instance(), 4), (f2(), 2)] {
        let c = &inst.category;
        let (sieves, brute) = brute_force_families(c);
        let found = topologies(c);
        check(brute.len() == want, format!("{}: brute force found {} families", inst.name, brute.len()))?;
        check(found.len() == want, format!("{}: enumeration found {} topologies", inst.name, found.len()))?;
        let homs = c.all_morphisms(0, 0).unwrap();
        for t in &found {
            let covering: BTreeSet<BTreeSet<usize>> = sieves
                .iter()
                .filter(|s| {
                    let gens: Vec<Morphism> = s.iter().map(|&i| homs[i].clone()).collect();
                    t.covers(&generated_sieve(c, 0, &gens).unwrap())
                })
                .cloned()
                .collect();
            check(brute.contains(&covering), format!("{}: topology {:?} has no brute-force counterpart", inst.name, t.min_sieve(0).dims()))?;
        }
        counts.push(format!("{}={}", inst.name, found.len()));
    }
    Ok(format!("topology counts {} agree with brute force over up-closed families", counts.join(", ")))
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    for inst in bundled() {
        let c = &inst.category;
        for t in topologies(c) {
            let s = generating_pretopology(c, &t).map_err(|e| e.to_string())?;
            for seq in &s.sequences {
                check(in_pre_prime(c, &t, seq).map_err(|e| e.to_string())?, format!("{}: generator outside pre′(T)", inst.name))?;
            }
            check(top_of(c, &s).map_err(|e| e.to_string())? == t, format!("{}: round trip changed a topology", inst.name))?;
            total += 1;
        }
    }
    Ok(format!("top(pre′(T)) = T for all {total} enumerated topologies"))
}

fn criterion_4() -> Outcome {
    let mut comparisons = 0;
    for inst in bundled() {
        let c = &inst.category;
        let all = presheaves(c);
        for (name, s) in &inst.pretopologies {
            let t = top_of(c, s).map_err(|e| e.to_string())?;
            for f in &all {
                let via = is_sheaf_via(c, s, f).map_err(|e| e.to_string())?;
                let direct = is_sheaf(c, &t, f).map_err(|e| e.to_string())?;
                check(via == direct, format!("{} {name}: isSheafVia disagrees on dims {:?}", inst.name, f.dims()))?;
                comparisons += 1;
            }
        }
    }
    Ok(format!("{comparisons} presheaf/pretopology pairs agree"))
}

fn coarser(a: &Topology, b: &Topology) -> bool {
    a.is_coarser_than(b)
}

fn criterion_5() -> Outcome {
    let mut pairs = 0;
    for inst in bundled() {
        let c = &inst.category;
        let lattice = topologies(c);
        let all = presheaves(c);
        let sheaves: Vec<Vec<bool>> = lattice
            .iter()
            .map(|t| all.iter().map(|f| is_sheaf(c, t, f).unwrap()).collect())
            .collect();
        for (i, a) in lattice.iter().enumerate() {
            for (j, b) in lattice.iter().enumerate() {
                let (join, meet) = join_meet(c, &[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
                let upper: Vec<&Topology> = lattice.iter().filter(|t| coarser(a, t) && coarser(b, t)).collect();
                let lub: Vec<&&Topology> = upper.iter().filter(|t| upper.iter().all(|u| coarser(t, u))).collect();
                check(lub.len() == 1 && **lub[0] == join, format!("{}: join of {i},{j} is not the least upper bound", inst.name))?;
                let lower: Vec<&Topology> = lattice.iter().filter(|t| coarser(t, a) && coarser(t, b)).collect();
                let glb: Vec<&&Topology> = lower.iter().filter(|t| lower.iter().all(|l| coarser(l, t))).collect();
                check(glb.len() == 1 && **glb[0] == meet, format!("{}: meet of {i},{j} is not the greatest lower bound", inst.name))?;
                let k = lattice.iter().position(|t| *t == join).unwrap();
                for f in 0..all.len() {
                    check(
                        sheaves[k][f] == (sheaves[i][f] && sheaves[j][f]),
                        format!("{}: sheaves of the join differ from the intersection", inst.name),
                    )?;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs: join = brute-force lub, meet = glb, Sh(join) = Sh(a) ∩ Sh(b)"))
}

fn random_nat(c: &FinLinearCategory, f: &Presheaf, g: &Presheaf, rng: &mut ChaCha8Rng) -> PresheafMap {
    let n = nat_space(c, f, g);
    let field = c.field();
    let coeffs: Vec<Scalar> = (0..n.dim()).map(|_| field.int(rng.gen_range(0..2))).collect();
    let v = if n.dim() == 0 {
        vec![field.zero(); n.space.ambient()]
    } else {
        n.space.basis().mul_vec(&coeffs).unwrap()
    };
    n.unflatten(&v)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut sampled = 0;
    for inst in bundled() {
        let c = &inst.category;
        let lattice = topologies(c);
        let all = presheaves(c);
        for k in 0..SAMPLED_PAIRS {
            let t = &lattice[k % lattice.len()];
            let f = &all[rng.gen_range(0..all.len())];
            let g = sheafify(c, t, &all[rng.gen_range(0..all.len())]).unwrap().sheaf;
            let shf = sheafify(c, t, f).unwrap();
            check(
                nat_space(c, &shf.sheaf, &g).dim() == nat_space(c, f, &g).dim(),
                format!("{}: adjunction dimensions differ", inst.name),
            )?;
            let once = sigma(c, t, f).unwrap();
            check(is_separated(c, t, &once.presheaf).unwrap(), format!("{}: ΣF not separated", inst.name))?;
            if is_separated(c, t, f).unwrap() {
                check(is_sheaf(c, t, &once.presheaf).unwrap(), format!("{}: Σ of a separated presheaf is not a sheaf", inst.name))?;
            }
            if is_sheaf(c, t, f).unwrap() {
                check(shf.unit.is_iso(), format!("{}: unit of a sheaf is not an iso", inst.name))?;
            }
            let f2 = &all[rng.gen_range(0..all.len())];
            let phi = random_nat(c, f, f2, &mut rng);
            let ker = kernel(c, f, &phi).unwrap().presheaf;
            let (s1, s2) = (sigma(c, t, f).unwrap(), sigma(c, t, f2).unwrap());
            let sphi = sigma_map(c, &s1, &s2, &phi).unwrap();
            let want: Vec<usize> = sphi.kernel_spaces().iter().map(|k| k.dim()).collect();
            check(sigma(c, t, &ker).unwrap().presheaf.dims() == want.as_slice(), format!("{}: Σ does not preserve a kernel", inst.name))?;
            sampled += 1;
        }
    }
    Ok(format!("{sampled} sampled (F, G) pairs ({SAMPLED_PAIRS} per instance, seed {SEED:#x})"))
}

fn criterion_7() -> Outcome {
    let k = f2xf2_instance();
    let c = &k.category;
    let t = top_of(c, k.pretopology("s_e1").unwrap()).map_err(|e| e.to_string())?;
    let yk = sheafify(c, &t, &Presheaf::representable(c, 0)).unwrap().sheaf;
    check(yk.total_dim() == 1, format!("dim of the sheafified representable is {}", yk.total_dim()))?;
    let e1 = c.morphism_ints(0, 0, &[1, 0]).unwrap();
    let all = presheaves(c);
    for f in &all {
        let action = f.act(&e1);
        let oracle_sheaf = action == Matrix::identity(c.field(), f.dim(0));
        check(is_sheaf(c, &t, f).unwrap() == oracle_sheaf, "sheaf predicate disagrees with M = e1M")?;
        let local = sheafify(c, &t, f).unwrap().sheaf.dim(0);
        check(local == action.rank(), "sheafification disagrees with M -> e1M")?;
    }
    let cubic = cubic_truncation();
    let cc = &cubic.category;
    let tx = top_of(cc, cubic.pretopology("s_x").unwrap()).map_err(|e| e.to_string())?;
    check(tx == Topology::finest(cc), "x does not generate the finest topology on F2[x]/(x^3)")?;
    for f in presheaves(cc) {
        check(sheafify(cc, &tx, &f).unwrap().sheaf.is_zero(), "nonzero sheaf for the finest topology")?;
    }
    Ok(format!("dim 1 on F2xF2 localised at e1, {} presheaves match M -> e1M; x generates the finest topology on x^3", all.len()))
}

fn criterion_8() -> Outcome {
    let k = f2xf2_instance();
    let c = &k.category;
    let t = top_of(c, k.pretopology("s_e1").unwrap()).map_err(|e| e.to_string())?;
    let ker = kernel_of_z(c, &t, 0, 0).map_err(|e| e.to_string())?;
    let e2 = addtop::exactla::Subspace::from_vectors(c.field(), 2, &[vec![c.field().zero(), c.field().one()]]).unwrap();
    check(ker == e2, "kernel of Z is not span{e2}")?;
    let mut subcanonical = 0;
    for inst in bundled() {
        let c = &inst.category;
        for t in topologies(c) {
            let sub = subcanonical_check(c, &t).unwrap().subcanonical;
            for x in c.objs() {
                for y in c.objs() {
                    let direct = kernel_of_z(c, &t, x, y).unwrap();
                    check(direct == kernel_of_z_via_unit(c, &t, x, y).unwrap(), format!("{}: kernel formula disagrees with the unit", inst.name))?;
                    check(!sub || direct.is_zero(), format!("{}: nonzero kernel on a subcanonical topology", inst.name))?;
                }
            }
            subcanonical += sub as usize;
        }
    }
    Ok(format!("kernel = span{{e2}}; zero on all {subcanonical} subcanonical bundled topologies"))
}

fn criterion_9() -> Outcome {
    let mut seen = Vec::new();
    for (lo, hi) in [(-4, 4), (-6, 6)] {
        let c = graded_window(Field::F2, 1, lo, hi).map_err(|e| e.to_string())?;
        let v = graded_generator(&c).map_err(|e| e.to_string())?;
        let both = classify_u(&c, &v).map_err(|e| e.to_string())?.class;
        let x0 = classify_u(&c, &v[..1]).map_err(|e| e.to_string())?.class;
        check(both == UClass::InUex, format!("[{lo},{hi}]: (x0,x1) classified {}", both.name()))?;
        check(x0 == UClass::InUep, format!("[{lo},{hi}]: x0 classified {}", x0.name()))?;
        seen.push((both, x0));
    }
    check(seen[0] == seen[1], "classification changed when the window grew")?;
    Ok("(x0,x1) InUex, x0 InUep not InUex, stable from [-4,4] to [-6,6]".into())
}

/// `H^0(P^n, O(d))` from the Čech complex of the cover `x_i ≠ 0`, one multidegree at a time.
fn cech_h0(n: usize, d: i64) -> usize {
    let vars = n + 1;
    let bound = d.abs() + n as i64 + 3;
    let field = Field::F2;
    let mut total = 0;
    let mut e = vec![-bound; vars];
    loop {
        if e.iter().sum::<i64>() == d {
            let regular_off = |skip: &[usize]| (0..vars).all(|j| skip.contains(&j) || e[j] >= 0);
            let c0: Vec<usize> = (0..vars).filter(|&i| regular_off(&[i])).collect();
            let c1: Vec<(usize, usize)> =
                (0..vars).flat_map(|i| (i + 1..vars).map(move |j| (i, j))).filter(|&(i, j)| regular_off(&[i, j])).collect();
            if !c0.is_empty() {
                let rows: Vec<Vec<Scalar>> = c1
                    .iter()
                    .map(|&(i, j)| c0.iter().map(|&k| field.int((k == i || k == j) as i64)).collect())
                    .collect();
                let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(field, rows).unwrap().rank() };
                total += c0.len() - rank;
            }
        }
        let mut k = 0;
        while k < vars && e[k] == bound {
            e[k] = -bound;
            k += 1;
        }
        if k == vars {
            break;
        }
        e[k] += 1;
    }
    total
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let cases: [(usize, i64, i64, usize, usize); 7] =
        [(1, 0, 6, 3, 1), (1, 1, 6, 3, 2), (1, 2, 6, 3, 3), (1, 3, 6, 3, 4), (1, -1, 6, 3, 0), (1, -2, 6, 3, 0), (2, 1, 4, 2, 3)];
    let mut shown = Vec::new();
    for (n, d, window, stages, want) in cases {
        let oracle = cech_h0(n, d);
        check(oracle == want, format!("Čech oracle gives {oracle} for n={n}, d={d}"))?;
        let r = proj_hom(n, d, window, stages).map_err(|e| format!("n={n}, d={d}: {e}"))?;
        check(r.dim == oracle, format!("projHom({n},{d}) = {} but the Čech oracle gives {oracle}", r.dim))?;
        shown.push(format!("({n},{d})={}", r.dim));
    }
    let elapsed = start.elapsed();
    check(elapsed < PROJ_HOM_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{} match the Čech oracle, stable within the window, {:.1}s", shown.join(" "), elapsed.as_secs_f64()))
}

fn criterion_11() -> Outcome {
    let c = graded_window(Field::F2, 1, -4, 4).map_err(|e| e.to_string())?;
    let v = graded_generator(&c).map_err(|e| e.to_string())?;
    let tv = tv_pretopology(&c, &[v.clone()]).map_err(|e| e.to_string())?;
    let cover = monoidal_check_pretopology(&c, &tv.pretopology).map_err(|e| e.to_string())?;
    check(cover.monoidal, format!("R ⊗ A fails to cover at {:?}", cover.witness))?;
    let factor = factorization_monoidal_check(&c, &[v.clone()], 2).map_err(|e| e.to_string())?;
    check(factor.monoidal, format!("v ⊗ A does not factor at {:?}", factor.witness))?;
    for t in [Topology::coarsest(&c), Topology::finest(&c)] {
        check(monoidal_check(&c, &t).map_err(|e| e.to_string())?.monoidal, "trivial topology is not monoidal")?;
    }
    let family = cofinite_monomial_family(&c, 3).map_err(|e| e.to_string())?;
    let cmp = compare_tv(&c, &v, &family, 4).map_err(|e| e.to_string())?;
    check(cmp.equal(), "a family member does not factor through a power of v")?;
    let k = f2xf2_instance();
    for (name, s) in &k.pretopologies {
        let t = top_of(&k.category, s).map_err(|e| e.to_string())?;
        let lhs = monoidal_check_pretopology(&k.category, s).map_err(|e| e.to_string())?.monoidal;
        let rhs = monoidal_check(&k.category, &t).map_err(|e| e.to_string())?.monoidal;
        check(lhs && rhs, format!("F2xF2 {name}: pretopology check {lhs}, topology check {rhs}"))?;
    }
    Ok(format!(
        "T_v covers stay covers after ⊗ ({} window clips), trivial topologies monoidal, T_V = T_v for {} cofinite monomials",
        cover.clipped.len(),
        family.len()
    ))
}

/// `F(-, y)` on the left factor, or `F(x, -)` on the right one.
fn restrict(k: &addtop::corpus::KellyInstance, f: &Presheaf, fixed: Obj, left: bool) -> Presheaf {
    let (a, b) = (&k.left.category, &k.right.category);
    let nb = b.num_objects();
    let (c, other) = if left { (a, b) } else { (b, a) };
    let obj = |x: Obj| if left { x * nb + fixed } else { fixed * nb + x };
    let dims = c.objs().map(|x| f.dim(obj(x))).collect();
    Presheaf::from_fn(c, dims, |m| {
        let id = other.identity(fixed);
        let (outer, inner) = if left { (&m.coords, &id.coords) } else { (&id.coords, &m.coords) };
        let coords = outer.iter().flat_map(|u| inner.iter().map(move |v| u * v)).collect();
        Ok(f.act(&Morphism { src: obj(m.src), tgt: obj(m.tgt), coords }))
    })
    .unwrap()
}

fn criterion_12() -> Outcome {
    let left_names: Vec<String> = f2xf2_instance().pretopologies.iter().map(|(n, _)| n.clone()).collect();
    let right_names: Vec<String> = addtop::corpus::dual_numbers().pretopologies.iter().map(|(n, _)| n.clone()).collect();
    let mut checked = 0;
    for ln in &left_names {
        for rn in &right_names {
            let k = kelly(ln, rn);
            let c = &k.category;
            let union: Pretopology = k.rows.union(&k.columns);
            let t = top_of(c, &union).map_err(|e| e.to_string())?;
            let ta = top_of(&k.left.category, k.left.pretopology(ln).unwrap()).map_err(|e| e.to_string())?;
            let tb = top_of(&k.right.category, k.right.pretopology(rn).unwrap()).map_err(|e| e.to_string())?;
            for f in presheaves(c) {
                let rows = k.right.category.objs().all(|y| is_sheaf(&k.left.category, &ta, &restrict(&k, &f, y, true)).unwrap());
                let cols = k.left.category.objs().all(|x| is_sheaf(&k.right.category, &tb, &restrict(&k, &f, x, false)).unwrap());
                let whole = is_sheaf(c, &t, &f).unwrap();
                let via = is_sheaf_via(c, &union, &f).unwrap();
                check(whole == (rows && cols) && via == whole, format!("{ln} ⊗ {rn}: disagreement on dims {:?}", f.dims()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} presheaves over {} pretopology pairs: bi-sheaf = row ∧ column", left_names.len() * right_names.len()))
}

fn main() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axiom suites", criterion_1),
        ("topology enumeration oracle", criterion_2),
        ("round trip top(pre′(T)) = T", criterion_3),
        ("sheaf predicate via pretopology", criterion_4),
        ("join formula and Giraud intersection", criterion_5),
        ("sheafification contract", criterion_6),
        ("Gabriel localisation", criterion_7),
        ("kernel formula", criterion_8),
        ("U-classification", criterion_9),
        ("projective hom dimensions", criterion_10),
        ("monoidality", criterion_11),
        ("Kelly product", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS [{name}] {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{name}] {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("total {:.1}s (budget {}s)", total.as_secs_f64(), TOTAL_BUDGET.as_secs());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
