//! Acceptance suite: one line per criterion, nonzero exit when any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};

use dualskel::duality::{
    derived_index_map, dualize_skeleton, fm_grading_map, involution_sweep, is_self_dual, self_duality_of,
    skeleton_from_subgroup, skeletons_isomorphic, GradedDims, LabelGroups,
};
use dualskel::gtau::{component_group, verify_dual_extended_group, GeneralEmbedding};
use dualskel::heis::{
    a_model, absolve, irreducibility, maslov_scalar, partition_vector, svn_representation, HeisenbergGroup, Splitting,
};
use dualskel::rootdata::{
    center, center_pairing, langlands_dual, parse_algebra, root_datum_isomorphic, Family, Form, RootDatum, SimpleType,
};
use dualskel::symp::{
    all_subgroups, annihilator, enumerate_lagrangians, is_lagrangian, SymplecticModule, DEFAULT_CAP,
};
use dualskel::weylfix::{j_global_sections, lifts_to_simply_connected, torus_weyl_invariants, TorusPoint};
use dualskel::zmod::{FinAbGroup, Phase, PhasePairing};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ty(f: Family, r: usize) -> SimpleType {
    SimpleType::new(f, r).unwrap()
}

fn sc(types: &[SimpleType]) -> RootDatum {
    RootDatum::semisimple(types, &Form::SimplyConnected).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Simple types of rank ≤ 8 in families A–D, plus the exceptional types.
fn table_types() -> Vec<SimpleType> {
    let mut v: Vec<SimpleType> = SimpleType::all_up_to(8)
        .into_iter()
        .filter(|t| matches!(t.family, Family::A | Family::B | Family::C | Family::D))
        .collect();
    v.extend([ty(Family::E, 6), ty(Family::E, 7), ty(Family::E, 8), ty(Family::F, 4), ty(Family::G, 2)]);
    v
}

/// Invariant factors of the classical center table.
fn classical_center(t: SimpleType) -> Vec<u64> {
    match (t.family, t.rank) {
        (Family::A, n) => vec![n as u64 + 1],
        (Family::B, _) | (Family::C, _) | (Family::E, 7) => vec![2],
        (Family::D, n) if n % 2 == 0 => vec![2, 2],
        (Family::D, _) => vec![4],
        (Family::E, 6) => vec![3],
        _ => vec![],
    }
}

fn criterion_1() -> Outcome {
    let types = table_types();
    for &t in &types {
        let z = center(&sc(&[t])).map_err(|e| e.to_string())?;
        let want = FinAbGroup::from_orders(&classical_center(t));
        ensure(z.group == want, format!("{t}: got {}, want {want}", z.group))?;
    }
    Ok(format!("{} types", types.len()))
}

fn criterion_2() -> Outcome {
    let types = table_types();
    for &t in &types {
        for form in [Form::SimplyConnected, Form::Adjoint] {
            let d = RootDatum::semisimple(&[t], &form).unwrap();
            ensure(langlands_dual(&langlands_dual(&d)) == d, format!("{t}: not an involution"))?;
        }
        let dual = langlands_dual(&sc(&[t]));
        let expected = t.dual();
        ensure(dual.types() == [expected], format!("{t}: dual type {:?}", dual.types()))?;
        if t.family == Family::B {
            ensure(expected.family == Family::C, format!("{t}: dual is not of type C"))?;
            let c_ad = RootDatum::semisimple(&[expected], &Form::Adjoint).unwrap();
            ensure(root_datum_isomorphic(&dual, &c_ad).is_some(), format!("{t}: dual is not adjoint {expected}"))?;
        }
    }
    Ok(format!("{} types, both forms", types.len()))
}

fn expected_embeddings(z: &FinAbGroup) -> usize {
    let f = z.factors_u64();
    match f.as_slice() {
        [2, 2] => 6,
        [n] if *n > 2 => 2,
        _ => 1,
    }
}

fn criterion_3_4() -> (Outcome, Outcome) {
    let mut cases = 0;
    let mut c3 = Ok(());
    let mut c4 = Ok(());
    for t in SimpleType::all_up_to(4) {
        let base = sc(&[t]);
        let z = center(&base).unwrap();
        let all = GeneralEmbedding::all(&z);
        if all.len() != expected_embeddings(&z.group) {
            c3 = c3.and(Err(format!("{t}: {} embeddings", all.len())));
        }
        for tau in &all {
            cases += 1;
            match verify_dual_extended_group(&base, tau) {
                Ok(r) if r.passed() && r.isomorphism.as_ref().is_some_and(|i| i.verify(&r.lhs_datum, &r.rhs_datum)) => {}
                Ok(r) => c3 = c3.and(Err(format!("{t}: {:?}", r.failure_certificate))),
                Err(e) => c3 = c3.and(Err(format!("{t}: {e}"))),
            }
            match component_group(tau) {
                Ok((g, hom)) if g == z.group && hom.is_isomorphism() => {}
                Ok((g, _)) => c4 = c4.and(Err(format!("{t}: components {g}"))),
                Err(e) => c4 = c4.and(Err(format!("{t}: {e}"))),
            }
        }
    }
    (c3.map(|_| format!("{cases} (type, embedding) cases")), c4.map(|_| format!("{cases} cases")))
}

fn criterion_5() -> Outcome {
    let sl2 = sc(&[ty(Family::A, 1)]);
    let pgl2 = RootDatum::semisimple(&[ty(Family::A, 1)], &Form::Adjoint).unwrap();
    let inv = torus_weyl_invariants(&sl2).map_err(|e| e.to_string())?;
    let pts: BTreeSet<String> = inv.elements().iter().map(|p| format!("{:?}", p.coords)).collect();
    let want: BTreeSet<String> = [vec![q(0, 1)], vec![q(1, 2)]].iter().map(|c| format!("{c:?}")).collect();
    ensure(inv.order() == 2 && pts == want, format!("SL2 invariants {pts:?}"))?;
    let pinv = torus_weyl_invariants(&pgl2).map_err(|e| e.to_string())?;
    let quarter = TorusPoint::new(&pgl2, &[q(1, 4)]).unwrap();
    ensure(pinv.order() == 2, "PGL2 invariants not of order 2")?;
    ensure(pinv.elements().contains(&quarter), "diag(i,-i) missing from PGL2 invariants")?;
    ensure(lifts_to_simply_connected(&quarter, 0).unwrap().is_none(), "diag(i,-i) lifts")?;
    let minus_i = TorusPoint::new(&pgl2, &[q(1, 2)]).unwrap();
    let lift = lifts_to_simply_connected(&minus_i, 0).unwrap().ok_or("image of -I does not lift")?;
    // the lift is determined up to the center {±I}
    ensure(lift.in_datum(&pgl2).unwrap() == minus_i, "lift does not map to the image of -I")?;
    ensure(pts.contains(&format!("{:?}", lift.coords)), "lift is not in {±I}")?;
    Ok("SL2 {±I}; PGL2 {1, [diag(i,-i)]}; lifting criterion".into())
}

fn criterion_6() -> Outcome {
    let sl2 = sc(&[ty(Family::A, 1)]);
    let pgl2 = RootDatum::semisimple(&[ty(Family::A, 1)], &Form::Adjoint).unwrap();
    let z2 = FinAbGroup::cyclic(2);
    let j_sl = j_global_sections(&sl2, &[], None).map_err(|e| e.to_string())?;
    let j_pgl = j_global_sections(&pgl2, &[], None).map_err(|e| e.to_string())?;
    ensure(j_sl.group == z2 && j_pgl.group == z2, "unramified sections are not Z/2")?;
    let all: Vec<usize> = (0..pgl2.num_roots()).collect();
    let full = j_global_sections(&pgl2, &all, None).map_err(|e| e.to_string())?;
    let cmp = full.cover_comparison.ok_or("no cover comparison")?;
    // H̃^W = {±I}, Z = μ₂
    let cover = torus_weyl_invariants(&sl2).unwrap().order();
    let z = center(&sl2).unwrap().group.order().to_u64().unwrap();
    ensure(cmp.image_matches && cmp.orders_match, "sections differ from the image of the cover invariants")?;
    ensure(full.group.order_u64() == cover / z, format!("|J| = {} but |H^W/Z| = {}", full.group.order_u64(), cover / z))?;
    Ok(format!("unramified Z/2, Z/2; fully ramified order {}", full.group.order_u64()))
}

/// Lagrangian subspaces of F₂^{2g} by filtering every subset of size 2^g.
fn brute_force_lagrangians(g: usize) -> BTreeSet<Vec<u32>> {
    let n = 1u32 << (2 * g);
    let omega = |x: u32, y: u32| -> u32 {
        (0..g).map(|i| ((x >> i) & 1) * ((y >> (g + i)) & 1) + ((y >> i) & 1) * ((x >> (g + i)) & 1)).sum::<u32>() % 2
    };
    let size = 1usize << g;
    let mut out = BTreeSet::new();
    let mut subset = Vec::with_capacity(size);
    fn rec(
        start: u32,
        n: u32,
        size: usize,
        subset: &mut Vec<u32>,
        out: &mut BTreeSet<Vec<u32>>,
        omega: &dyn Fn(u32, u32) -> u32,
    ) {
        if subset.len() == size {
            let closed = subset.iter().all(|&a| subset.iter().all(|&b| subset.contains(&(a ^ b))));
            let iso = subset.iter().all(|&a| subset.iter().all(|&b| omega(a, b) == 0));
            if subset.contains(&0) && closed && iso {
                out.insert(subset.clone());
            }
            return;
        }
        for x in start..n {
            subset.push(x);
            rec(x + 1, n, size, subset, out, omega);
            subset.pop();
        }
    }
    rec(0, n, size, &mut subset, &mut out, &omega);
    out
}

/// Modules `H¹(C; Z(G̃))` of the types of rank ≤ 3 at genus ≤ 2 with at most 2¹² elements.
fn small_modules() -> Vec<(Vec<SimpleType>, usize)> {
    let mut out = Vec::new();
    for t in SimpleType::all_up_to(3) {
        for g in [1, 2] {
            let m = SymplecticModule::for_algebra(&[t], g).unwrap();
            if m.order() <= 1 << 12 {
                out.push((vec![t], g));
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let z2 = FinAbGroup::cyclic(2);
    let pairing = PhasePairing { left: z2.clone(), right: z2.clone(), gram: vec![vec![Phase::new(1, 2)]] };
    for (g, want) in [(1usize, 3usize), (2, 15)] {
        let m = SymplecticModule::new(z2.clone(), pairing.clone(), g).unwrap();
        let lags = enumerate_lagrangians(&m, DEFAULT_CAP).map_err(|e| e.to_string())?;
        // digits are (a₁..a_g, b₁..b_g); encode as bits in the same order
        let found: BTreeSet<Vec<u32>> = lags
            .iter()
            .map(|l| {
                let mut v: Vec<u32> = l
                    .elements()
                    .iter()
                    .map(|&x| m.decode(x).iter().enumerate().map(|(i, &d)| (d as u32) << i).sum())
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        let brute = brute_force_lagrangians(g);
        let product: usize = (1..=g).map(|i| (1usize << i) + 1).product();
        ensure(lags.len() == want && brute.len() == want && product == want, format!("g={g}: {} found", lags.len()))?;
        ensure(found == brute, format!("g={g}: sets differ from brute force"))?;
    }
    let mut total = 0usize;
    let modules = small_modules();
    for (types, g) in &modules {
        let m = SymplecticModule::for_algebra(types, *g).unwrap();
        for s in all_subgroups(&m, DEFAULT_CAP).map_err(|e| e.to_string())? {
            let back = annihilator(&m, &annihilator(&m, &s));
            ensure(back.elements() == s.elements(), format!("{types:?} g={g}: ann(ann) differs"))?;
            total += 1;
        }
    }
    Ok(format!("3 and 15 Lagrangians; ann∘ann = id on {total} subgroups of {} modules", modules.len()))
}

fn criterion_8() -> Outcome {
    let d2 = [ty(Family::D, 2)];
    let p = center_pairing(&sc(&d2)).unwrap();
    // Υ((a,b),(c,d)) = Υ₂(a,c) + Υ₂(b,d)
    let half = Phase::new(1, 2);
    ensure(p.gram == vec![vec![half, Phase::ZERO], vec![Phase::ZERO, half]], format!("pairing {:?}", p.gram))?;
    for g in [1, 2] {
        let m = SymplecticModule::for_algebra(&d2, g).unwrap();
        let h1 = m.cohomology_of_subgroup(&[vec![1, 1]]).map_err(|e| e.to_string())?;
        ensure(is_lagrangian(&m, &h1), format!("g={g}: diagonal not Lagrangian"))?;
        ensure(annihilator(&m, &h1).elements() == h1.elements(), format!("g={g}: ann differs"))?;
    }
    Ok("diagonal mu2 Lagrangian at g=1,2".into())
}

fn heis(n: u64) -> HeisenbergGroup {
    let a = FinAbGroup::cyclic(n);
    let gram = vec![vec![Phase::new(1, n as i64)]];
    HeisenbergGroup::new(SymplecticModule::new(a.clone(), PhasePairing { left: a.clone(), right: a, gram }, 1).unwrap())
        .unwrap()
}

fn criterion_9() -> Outcome {
    let tol = 1e-9;
    let mut worst = 0.0f64;
    for n in [2u64, 3, 4] {
        let h = heis(n);
        ensure(h.commutation_relations_hold(), format!("(Z/{n})^2: relations fail"))?;
        for l in enumerate_lagrangians(&h.module, DEFAULT_CAP).unwrap() {
            let rep = svn_representation(&h, &l).map_err(|e| e.to_string())?;
            let r = irreducibility(&h, &rep);
            worst = worst.max(r.residue);
            ensure(r.irreducible() && r.residue < tol, format!("(Z/{n})^2: {r:?}"))?;
        }
        let v = partition_vector(&h).unwrap();
        let za = absolve(&h, &v, &Splitting::canonical(&h, &h.a).unwrap()).map_err(|e| e.to_string())?;
        let zb = absolve(&h, &v, &Splitting::canonical(&h, &h.b).unwrap()).map_err(|e| e.to_string())?;
        let close = |z: [f64; 2], re: f64| (z[0] - re).abs() < tol && z[1].abs() < tol;
        ensure(close(za.partition_function, 1.0), format!("(Z/{n})^2: L=A gives {:?}", za.partition_function))?;
        ensure(close(zb.partition_function, n as f64), format!("(Z/{n})^2: L=B gives {:?}", zb.partition_function))?;
        ensure(a_model(&h).unwrap().dim() == n as usize, "dimension")?;
    }
    let h = heis(2);
    let lags = enumerate_lagrangians(&h.module, DEFAULT_CAP).unwrap();
    let s: Vec<Splitting> = lags.iter().map(|l| Splitting::canonical(&h, l).unwrap()).collect();
    let c = maslov_scalar(&h, &s[0], &s[1], &s[2]).map_err(|e| e.to_string())?;
    ensure((c.norm() - 1.0).abs() < tol, format!("|c| = {}", c.norm()))?;
    ensure((c.powi(8) - Complex64::new(1.0, 0.0)).norm() < tol, format!("c = {c} is not an 8th root of unity"))?;
    Ok(format!("max commutant residue {worst:.1e}; c = {:.6}{:+.6}i", c.re, c.im))
}

fn criterion_10(seed: u64) -> Outcome {
    ensure(fm_grading_map(&GradedDims::unit(-1, 1)) == GradedDims::unit(1, 1), "(-1,1) does not go to (1,1)")?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    for _ in 0..200 {
        let mut d = GradedDims::default();
        for _ in 0..rng.random_range(1..6) {
            d.add(rng.random_range(-6..6), rng.random_range(-6..6), rng.random_range(1..5));
        }
        let mut x = d.clone();
        for _ in 0..4 {
            x = fm_grading_map(&x);
        }
        ensure(x == d, "fourth power is not the identity")?;
    }
    // exact order: lower powers move a generic unit
    let u = GradedDims::unit(2, 1);
    let mut x = u.clone();
    for k in 1..4 {
        x = fm_grading_map(&x);
        ensure(x != u, format!("power {k} fixes (2,1)"))?;
    }
    for n in [2u64, 3, 4] {
        let labels = LabelGroups::of_algebra(&[ty(Family::A, n as usize - 1)]).unwrap();
        for d in 0..n {
            for e in 0..n {
                let (a, b) = derived_index_map(&labels, &[BigInt::from(d)], &[BigInt::from(e)]).map_err(|e| e.to_string())?;
                ensure(a == vec![BigInt::from((n - e) % n)] && b == vec![BigInt::from(d)], format!("n={n}: ({d},{e})"))?;
            }
        }
    }
    Ok("rotation of order 4; (d,e) -> (-e,d) for n = 2,3,4".into())
}

fn criterion_11() -> Outcome {
    let mut total = 0;
    let mut parts = Vec::new();
    for (types, g) in small_modules() {
        let r = involution_sweep(&types, g, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(r.failures.is_empty(), format!("{} g={g}: {:?}", r.algebra, r.failures.first()))?;
        total += r.subgroups;
        parts.push(format!("{}/g{}:{}", r.algebra, g, r.subgroups));
    }
    Ok(format!("{total} skeletons ({})", parts.join(" ")))
}

fn criterion_12() -> Outcome {
    let a1 = [ty(Family::A, 1)];
    for g in [1, 2] {
        let m = SymplecticModule::for_algebra(&a1, g).unwrap();
        for l in enumerate_lagrangians(&m, DEFAULT_CAP).unwrap() {
            let s = skeleton_from_subgroup(&a1, m.clone(), l);
            ensure(self_duality_of(&s).unwrap().self_dual, format!("g={g}: not self-dual"))?;
            ensure(skeletons_isomorphic(&s, &dualize_skeleton(&s).unwrap()), format!("g={g}: not fixed"))?;
        }
    }
    let a2 = parse_algebra("A2").unwrap();
    ensure(!is_self_dual(&a2, 1, &[]).unwrap().self_dual, "A2, g=1, Γ=0 reported self-dual")?;
    Ok("A1 Lagrangians self-dual at g=1,2; A2 with Γ=0 is not".into())
}

fn main() {
    let seed = std::env::var("ACCEPTANCE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240917);
    let mut failed = 0;
    let mut report = |n: u32, name: &str, limit: Option<f64>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        let over = limit.is_some_and(|l| secs > l);
        let (ok, detail) = match out {
            Ok(d) if over => (false, format!("{d}; took {secs:.2}s, limit {:.0}s", limit.unwrap())),
            Ok(d) => (true, d),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {n:>2} {} {name} [{secs:.2}s] {detail}", if ok { "PASS" } else { "FAIL" });
    };
    report(1, "center table", Some(1.0), &mut criterion_1);
    report(2, "Langlands involution and B/C swap", Some(1.0), &mut criterion_2);
    let start = Instant::now();
    let (c3, c4) = criterion_3_4();
    let elapsed = start.elapsed().as_secs_f64();
    let mut c3 = Some(c3);
    report(3, "dual of extended groups", Some(10.0), &mut || {
        let r = c3.take().unwrap();
        if elapsed > 10.0 {
            return Err(format!("took {elapsed:.2}s"));
        }
        r.map(|d| format!("{d}, {elapsed:.2}s together with criterion 4"))
    });
    let mut c4 = Some(c4);
    report(4, "component group equals center", None, &mut || c4.take().unwrap());
    report(5, "Weyl-invariant torus points", None, &mut criterion_5);
    report(6, "J global sections", None, &mut criterion_6);
    report(7, "Lagrangian counts and double annihilators", Some(30.0), &mut criterion_7);
    report(8, "Spin(4) diagonal Lagrangian", None, &mut criterion_8);
    report(9, "Heisenberg suite", Some(5.0), &mut criterion_9);
    report(10, "grading rotation and label exchange", None, &mut || criterion_10(seed));
    report(11, "dualization is an involution", Some(60.0), &mut criterion_11);
    report(12, "self-duality", None, &mut criterion_12);
    println!("acceptance: {} of 12 criteria passed (seed {seed})", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
