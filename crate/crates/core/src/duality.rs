//! Finite skeletons of Hitchin moduli stacks modulo `Γ ⊆ H¹(C; Z(G̃))`, their duals,
//! self-duality, the Fourier–Mukai grading rotation and the gerbe-label exchange.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::gtau::CheckRecord;
use crate::registry::vector_kernel_generator;
use crate::rootdata::{center, center_pairing, langlands_dual, root_datum_isomorphic, Family, Form, RootDataError, RootDatum, SimpleType};
use crate::symp::{
    all_subgroups, annihilator, enumerate_lagrangians, is_isotropic, is_lagrangian, quotient_dual_matches_annihilator,
    subgroup_quotient, Subgroup, SympError, SymplecticModule, DEFAULT_CAP,
};
use crate::zmod::{pontryagin_dual, FinAbGroup, Lattice, Phase};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualityError {
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("label does not lie in its group")]
    LabelOutOfGroup,
    #[error("modules of the two sides have different layouts")]
    IncompatibleModules,
    #[error(transparent)]
    Symp(#[from] SympError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// Local data `Higgs × Z(G̃) × BZ(G̃)` of `M_𝔤(C)/Γ`: components, band, and the kernel
/// of the isogeny applied to the Prym.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StackySkeleton {
    pub algebra: Vec<SimpleType>,
    pub genus: usize,
    pub module: SymplecticModule,
    pub gamma: Subgroup,
    pub prym_kernel: FinAbGroup,
    pub pi0: FinAbGroup,
    pub band: FinAbGroup,
}

fn simply_connected(types: &[SimpleType]) -> Result<RootDatum, RootDataError> {
    RootDatum::semisimple(types, &Form::SimplyConnected)
}

/// Simple factors of the Langlands dual algebra.
pub fn dual_algebra(types: &[SimpleType]) -> Result<Vec<SimpleType>, RootDataError> {
    Ok(langlands_dual(&simply_connected(types)?).types().to_vec())
}

/// Skeleton for a subgroup already built in `module`.
pub fn skeleton_from_subgroup(algebra: &[SimpleType], module: SymplecticModule, gamma: Subgroup) -> StackySkeleton {
    let z = module.coefficient.clone();
    StackySkeleton {
        algebra: algebra.to_vec(),
        genus: module.genus,
        prym_kernel: gamma.structure(&module),
        gamma,
        module,
        pi0: z.clone(),
        band: z,
    }
}

pub fn m_skeleton(algebra: &[SimpleType], genus: usize, gamma: &[Vec<u64>]) -> Result<StackySkeleton, DualityError> {
    let module = SymplecticModule::for_algebra(algebra, genus)?;
    let gamma = module.subgroup(gamma).map_err(|e| DualityError::InvalidSubgroup(e.to_string()))?;
    Ok(skeleton_from_subgroup(algebra, module, gamma))
}

/// An algebra and its Langlands dual with both carriers, built once so repeated
/// dualizations skip the root-datum work.
#[derive(Clone, Debug)]
pub struct DualPair {
    sides: [(Vec<SimpleType>, SymplecticModule); 2],
}

impl DualPair {
    pub fn new(algebra: &[SimpleType], genus: usize) -> Result<Self, DualityError> {
        let dual = dual_algebra(algebra)?;
        let module = SymplecticModule::for_algebra(algebra, genus)?;
        let dual_module = SymplecticModule::for_algebra(&dual, genus)?;
        if !module.same_form(&dual_module) {
            return Err(DualityError::IncompatibleModules);
        }
        Ok(DualPair { sides: [(algebra.to_vec(), module), (dual, dual_module)] })
    }

    pub fn module(&self) -> &SymplecticModule {
        &self.sides[0].1
    }

    pub fn skeleton(&self, gamma: Subgroup) -> StackySkeleton {
        skeleton_from_subgroup(&self.sides[0].0, self.sides[0].1.clone(), gamma)
    }

    fn side_of(&self, s: &StackySkeleton) -> Result<usize, DualityError> {
        let i = self.sides.iter().position(|(a, _)| *a == s.algebra).ok_or(DualityError::IncompatibleModules)?;
        if !s.module.same_form(&self.sides[i].1) {
            return Err(DualityError::IncompatibleModules);
        }
        Ok(i)
    }

    /// `m_skeleton(^L𝔤, g, ann(Γ))`.
    pub fn dualize(&self, s: &StackySkeleton) -> Result<StackySkeleton, DualityError> {
        let (algebra, module) = &self.sides[1 - self.side_of(s)?];
        let ann = annihilator(&s.module, &s.gamma);
        let gamma = module.make(ann.elements().to_vec());
        Ok(skeleton_from_subgroup(algebra, module.clone(), gamma))
    }

    /// Dual skeleton with swap checks and the double-dual comparison.
    pub fn report(&self, s: &StackySkeleton) -> Result<DualizationReport, DualityError> {
        let i = self.side_of(s)?;
        let dual = self.dualize(s)?;
        let back = self.dualize(&dual)?;
        let mut checks = swap_checks_expecting(s, &dual, &self.sides[1 - i].0);
        let involution = skeletons_isomorphic(s, &back);
        checks.push(check("double_dual_is_original", involution, json!({"algebra": crate::rootdata::algebra_label(&back.algebra)})));
        Ok(DualizationReport {
            certificate: json!({
                "layout": s.module.layout,
                "gamma_order": s.gamma.order(),
                "annihilator_order": dual.gamma.order(),
                "carrier_order": s.module.order(),
            }),
            input: s.clone(),
            dual,
            swap_checks: checks,
        })
    }
}

/// `m_skeleton(^L𝔤, g, ann(Γ))`.
pub fn dualize_skeleton(s: &StackySkeleton) -> Result<StackySkeleton, DualityError> {
    DualPair::new(&s.algebra, s.genus)?.dualize(s)
}

/// Same genus, same subgroup, same finite groups, and simply connected forms that are
/// isomorphic as root data.
pub fn skeletons_isomorphic(a: &StackySkeleton, b: &StackySkeleton) -> bool {
    let algebras = a.algebra == b.algebra
        || match (simply_connected(&a.algebra), simply_connected(&b.algebra)) {
            (Ok(x), Ok(y)) => root_datum_isomorphic(&x, &y).is_some(),
            _ => false,
        };
    algebras
        && a.genus == b.genus
        && a.module.moduli() == b.module.moduli()
        && a.gamma.elements() == b.gamma.elements()
        && a.prym_kernel == b.prym_kernel
        && a.pi0 == b.pi0
        && a.band == b.band
}

fn check(name: &str, pass: bool, certificate: serde_json::Value) -> CheckRecord {
    CheckRecord { name: name.into(), pass, certificate }
}

/// `π₀(dual) ≅ band^∨`, `band(dual) ≅ π₀^∨`, `Γ(dual) = ann(Γ) ≅ (H¹/Γ)^∨`, and the
/// algebra is the Langlands dual one.
pub fn swap_checks(s: &StackySkeleton, d: &StackySkeleton) -> Vec<CheckRecord> {
    match dual_algebra(&s.algebra) {
        Ok(expected) => swap_checks_expecting(s, d, &expected),
        Err(_) => swap_checks_expecting(s, d, &[]),
    }
}

fn swap_checks_expecting(s: &StackySkeleton, d: &StackySkeleton, expected_algebra: &[SimpleType]) -> Vec<CheckRecord> {
    let band_dual = pontryagin_dual(&s.band).0;
    let pi0_dual = pontryagin_dual(&s.pi0).0;
    let ann = annihilator(&s.module, &s.gamma);
    let quotient = subgroup_quotient(&s.module, &s.gamma, &s.module.full()).ok();
    let quotient_dual = quotient.as_ref().map(|q| pontryagin_dual(q).0);
    vec![
        check(
            "pi0_of_dual_is_dual_of_band",
            d.pi0 == band_dual,
            json!({"pi0_dual_side": d.pi0.to_string(), "band_dual": band_dual.to_string()}),
        ),
        check(
            "band_of_dual_is_dual_of_pi0",
            d.band == pi0_dual,
            json!({"band_dual_side": d.band.to_string(), "pi0_dual": pi0_dual.to_string()}),
        ),
        check(
            "kernel_of_dual_is_annihilator",
            d.gamma.elements() == ann.elements()
                && quotient_dual.as_ref() == Some(&d.prym_kernel)
                && quotient_dual_matches_annihilator(&s.module, &s.gamma),
            json!({
                "annihilator_order": ann.order(),
                "quotient": quotient.map(|q| q.to_string()),
                "kernel_dual_side": d.prym_kernel.to_string(),
            }),
        ),
        check(
            "algebra_is_langlands_dual",
            !expected_algebra.is_empty() && expected_algebra == &d.algebra[..],
            json!({"input": crate::rootdata::algebra_label(&s.algebra), "dual": crate::rootdata::algebra_label(&d.algebra)}),
        ),
    ]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualizationReport {
    pub input: StackySkeleton,
    pub dual: StackySkeleton,
    pub swap_checks: Vec<CheckRecord>,
    pub certificate: serde_json::Value,
}

impl DualizationReport {
    pub fn passed(&self) -> bool {
        self.swap_checks.iter().all(|c| c.pass)
    }
}

/// Dual skeleton with swap checks and the double-dual comparison.
pub fn dualization_report(s: &StackySkeleton) -> Result<DualizationReport, DualityError> {
    DualPair::new(&s.algebra, s.genus)?.report(s)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelfDuality {
    pub self_dual: bool,
    pub checks: Vec<CheckRecord>,
}

/// Self-dual iff the simply connected form is isomorphic to that of its Langlands dual
/// and `Γ` is Lagrangian.
pub fn is_self_dual(algebra: &[SimpleType], genus: usize, gamma: &[Vec<u64>]) -> Result<SelfDuality, DualityError> {
    let s = m_skeleton(algebra, genus, gamma)?;
    self_duality_of(&s)
}

pub fn self_duality_of(s: &StackySkeleton) -> Result<SelfDuality, DualityError> {
    let sc = simply_connected(&s.algebra)?;
    let dual_sc = langlands_dual(&sc).simply_connected_cover()?;
    let iso = root_datum_isomorphic(&sc, &dual_sc);
    let lagrangian = is_lagrangian(&s.module, &s.gamma);
    let ann = annihilator(&s.module, &s.gamma);
    let checks = vec![
        check(
            "simply_connected_form_is_self_dual",
            iso.is_some(),
            serde_json::to_value(&iso).unwrap_or(serde_json::Value::Null),
        ),
        check("gamma_is_lagrangian", lagrangian, json!({"gamma_order": s.gamma.order(), "annihilator_order": ann.order()})),
    ];
    Ok(SelfDuality { self_dual: checks.iter().all(|c| c.pass), checks })
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct InvolutionSweep {
    pub algebra: String,
    pub genus: usize,
    pub carrier: u64,
    pub subgroups: usize,
    pub failures: Vec<String>,
}

/// Dualizes every subgroup of the carrier twice and checks every swap law.
pub fn involution_sweep(algebra: &[SimpleType], genus: usize, cap: u64) -> Result<InvolutionSweep, DualityError> {
    let pair = DualPair::new(algebra, genus)?;
    let module = pair.module();
    let subs = all_subgroups(module, cap)?;
    let mut out = InvolutionSweep {
        algebra: crate::rootdata::algebra_label(algebra),
        genus,
        carrier: module.order(),
        subgroups: subs.len(),
        failures: Vec::new(),
    };
    for g in subs {
        let s = pair.skeleton(g);
        let r = pair.report(&s)?;
        for c in r.swap_checks.iter().filter(|c| !c.pass) {
            out.failures.push(format!("{:?}: {}", s.gamma.generators, c.name));
        }
    }
    Ok(out)
}

/// Dimensions graded by support `m` and weight `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(i64, i64, u64)>", from = "Vec<(i64, i64, u64)>")]
pub struct GradedDims(pub BTreeMap<(i64, i64), u64>);

impl From<GradedDims> for Vec<(i64, i64, u64)> {
    fn from(g: GradedDims) -> Self {
        g.0.into_iter().map(|((m, n), c)| (m, n, c)).collect()
    }
}

impl From<Vec<(i64, i64, u64)>> for GradedDims {
    fn from(v: Vec<(i64, i64, u64)>) -> Self {
        let mut out = GradedDims::default();
        for (m, n, c) in v {
            out.add(m, n, c);
        }
        out
    }
}

impl GradedDims {
    pub fn unit(m: i64, n: i64) -> Self {
        GradedDims(BTreeMap::from([((m, n), 1)]))
    }

    pub fn add(&mut self, m: i64, n: i64, count: u64) {
        if count > 0 {
            *self.0.entry((m, n)).or_insert(0) += count;
        }
    }
}

/// `(m, n) ↦ (n, −m)`.
pub fn fm_grading_map(d: &GradedDims) -> GradedDims {
    GradedDims(d.0.iter().map(|(&(m, n), &c)| ((n, -m), c)).collect())
}

/// Label groups of the gerbes on each side: `α ∈ Z(G̃)^∨`, `β ∈ Z(^LG̃)^∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelGroups {
    pub alpha: FinAbGroup,
    pub beta: FinAbGroup,
}

impl LabelGroups {
    pub fn of_algebra(algebra: &[SimpleType]) -> Result<Self, DualityError> {
        let sc = simply_connected(algebra)?;
        let dual_sc = langlands_dual(&sc).simply_connected_cover()?;
        Ok(LabelGroups {
            alpha: pontryagin_dual(&center(&sc)?.group).0,
            beta: pontryagin_dual(&center(&dual_sc)?.group).0,
        })
    }

    /// Label groups seen from the dual side.
    pub fn dual(&self) -> Self {
        LabelGroups { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }
}

fn in_group(g: &FinAbGroup, x: &[BigInt]) -> bool {
    x.len() == g.ngens() && g.reduce(x) == x
}

/// `(α, β) ↦ (−β, α)`, landing in `labels.dual()`.
pub fn derived_index_map(
    labels: &LabelGroups,
    alpha: &[BigInt],
    beta: &[BigInt],
) -> Result<(Vec<BigInt>, Vec<BigInt>), DualityError> {
    if !in_group(&labels.alpha, alpha) || !in_group(&labels.beta, beta) {
        return Err(DualityError::LabelOutOfGroup);
    }
    Ok((labels.beta.neg(beta), alpha.to_vec()))
}

/// Discrete part of `Bun_T` and its variants: components, and the cocharacter lattice of
/// the band torus (zero rank when there is no band).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSkeleton {
    pub kind: BunKind,
    pub pi0: Lattice,
    pub band: Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BunKind {
    /// `BunSt_T`
    Stack,
    /// `BunSt_T^0`
    NeutralStack,
    /// `Bun_T`
    Coarse,
    /// `Bun_T^0`
    NeutralCoarse,
}

fn lattice_dual(l: &Lattice) -> Lattice {
    if l.rank() == 0 {
        return Lattice::zero(l.ambient_rank());
    }
    l.dual().expect("full-rank lattice")
}

impl TorusSkeleton {
    pub fn of(kind: BunKind, cochar: &Lattice) -> Self {
        let zero = Lattice::zero(cochar.ambient_rank());
        let (pi0, band) = match kind {
            BunKind::Stack => (cochar.clone(), cochar.clone()),
            BunKind::NeutralStack => (zero, cochar.clone()),
            BunKind::Coarse => (cochar.clone(), zero),
            BunKind::NeutralCoarse => (zero.clone(), zero),
        };
        TorusSkeleton { kind, pi0, band }
    }

    /// Components become characters of the band and the band becomes the torus with
    /// characters the components: `π₀ ↦ X^•(band)`, `band ↦ torus with X^• = π₀`.
    pub fn dual(&self) -> (Lattice, Lattice) {
        (lattice_dual(&self.band), lattice_dual(&self.pi0))
    }
}

/// Checks `BunSt_T^D = BunSt_{^LT}`, `(BunSt_T^0)^D = Bun_{^LT}`, `(Bun_T^0)^D = Bun_{^LT}^0`
/// on components and bands, with `X_•(^LT) = X_•(T)^*`.
pub fn bun_torus_skeleton_dual(cochar: &Lattice, genus: usize) -> Vec<CheckRecord> {
    let dual_cochar = lattice_dual(cochar);
    let cases = [
        (BunKind::Stack, BunKind::Stack, "stack_dual_is_dual_stack"),
        (BunKind::NeutralStack, BunKind::Coarse, "neutral_stack_dual_is_dual_coarse"),
        (BunKind::NeutralCoarse, BunKind::NeutralCoarse, "neutral_coarse_dual_is_dual_neutral_coarse"),
        (BunKind::Coarse, BunKind::NeutralStack, "coarse_dual_is_dual_neutral_stack"),
    ];
    cases
        .iter()
        .map(|&(from, to, name)| {
            let s = TorusSkeleton::of(from, cochar);
            let (pi0, band) = s.dual();
            let expected = TorusSkeleton::of(to, &dual_cochar);
            let back = TorusSkeleton { kind: to, pi0: pi0.clone(), band: band.clone() }.dual();
            let pass = pi0 == expected.pi0 && band == expected.band && back == (s.pi0.clone(), s.band.clone());
            check(
                name,
                pass,
                json!({
                    "rank": cochar.rank(),
                    "abelian_dimension": genus * cochar.rank(),
                    "dual_cocharacters": dual_cochar.basis_vectors().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
            )
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegressionItem {
    /// Every Lagrangian of `H¹(C; μ₂)` gives a self-dual `A₁` quotient.
    A1Lagrangians,
    /// The type A gerbe-label exchange `(d, e) ↦ (−e, d)`.
    TypeAIndexMap,
    /// `μ₂ = ker(Spin(2n) → SO(2n))` induces a Lagrangian, `2n ∈ {4, 6, 8}`.
    OrthogonalLagrangians,
    /// Dualizing `B_n` skeletons gives `C_n` skeletons with swapped components and bands.
    OrthogonalSymplecticSwap,
}

impl RegressionItem {
    pub const ALL: [RegressionItem; 4] = [
        RegressionItem::A1Lagrangians,
        RegressionItem::TypeAIndexMap,
        RegressionItem::OrthogonalLagrangians,
        RegressionItem::OrthogonalSymplecticSwap,
    ];
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegressionResult {
    pub item: RegressionItem,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegressionReport {
    pub results: Vec<RegressionResult>,
    pub passed: bool,
}

/// Module for `algebra` at genus `g`; with `corrupt` the pairing is replaced by zero.
fn regression_module(algebra: &[SimpleType], genus: usize, corrupt: bool) -> Result<SymplecticModule, DualityError> {
    if !corrupt {
        return Ok(SymplecticModule::for_algebra(algebra, genus)?);
    }
    let d = simply_connected(algebra)?;
    let mut p = center_pairing(&d)?;
    for row in p.gram.iter_mut() {
        for x in row.iter_mut() {
            *x = Phase::ZERO;
        }
    }
    Ok(SymplecticModule::new(center(&d)?.group, p, genus)?)
}

fn ty(f: Family, r: usize) -> SimpleType {
    SimpleType::new(f, r).expect("valid type")
}

fn run_item(item: RegressionItem, corrupt: bool) -> Result<Vec<CheckRecord>, DualityError> {
    let mut checks = Vec::new();
    match item {
        RegressionItem::A1Lagrangians => {
            let a1 = [ty(Family::A, 1)];
            for g in [1, 2] {
                let m = regression_module(&a1, g, corrupt)?;
                let lags = enumerate_lagrangians(&m, DEFAULT_CAP)?;
                let mut all = true;
                for l in &lags {
                    let s = skeleton_from_subgroup(&a1, m.clone(), l.clone());
                    let sd = self_duality_of(&s)?;
                    let fixed = skeletons_isomorphic(&s, &dualize_skeleton(&s)?);
                    all &= sd.self_dual && fixed;
                }
                checks.push(check(&format!("a1_genus_{g}_lagrangians_self_dual"), all && !lags.is_empty(), json!({"lagrangians": lags.len()})));
            }
        }
        RegressionItem::TypeAIndexMap => {
            for n in [2u64, 3, 4] {
                let labels = LabelGroups::of_algebra(&[ty(Family::A, n as usize - 1)])?;
                let cyclic = FinAbGroup::cyclic(n);
                let mut ok = labels.alpha == cyclic && labels.beta == cyclic;
                for d in 0..n {
                    for e in 0..n {
                        let (a, b) = derived_index_map(&labels, &[BigInt::from(d)], &[BigInt::from(e)])?;
                        ok &= a == vec![BigInt::from((n - e) % n)] && b == vec![BigInt::from(d)];
                    }
                }
                checks.push(check(&format!("sl{n}_labels_exchange"), ok, json!({"labels": labels.alpha.to_string()})));
            }
        }
        RegressionItem::OrthogonalLagrangians => {
            for rank in [2usize, 3, 4] {
                let d_type = ty(Family::D, rank);
                let z = center(&simply_connected(&[d_type])?)?;
                let x = vector_kernel_generator(d_type).map_err(|e| DualityError::InvalidSubgroup(e.to_string()))?;
                let coords = z.classify(&x).ok_or(DualityError::InvalidSubgroup("vector kernel".into()))?;
                let gen: Vec<u64> = coords.iter().map(|c| u64::try_from(c).unwrap_or(0)).collect();
                for g in [1, 2] {
                    let m = regression_module(&[d_type], g, corrupt)?;
                    let h1 = m.cohomology_of_subgroup(std::slice::from_ref(&gen))?;
                    checks.push(check(
                        &format!("so{}_genus_{g}_mu2_lagrangian", 2 * rank),
                        is_isotropic(&m, &h1) && is_lagrangian(&m, &h1),
                        json!({"mu2_generator": gen, "order": h1.order(), "carrier": m.order()}),
                    ));
                }
            }
        }
        RegressionItem::OrthogonalSymplecticSwap => {
            for rank in [2usize, 3] {
                let b = [ty(Family::B, rank)];
                let m = regression_module(&b, 1, corrupt)?;
                let mut ok = true;
                let subs = all_subgroups(&m, DEFAULT_CAP)?;
                for g in &subs {
                    let r = dualization_report(&skeleton_from_subgroup(&b, m.clone(), g.clone()))?;
                    ok &= r.passed() && r.dual.algebra == vec![ty(Family::C, rank)];
                }
                // the dual of Spin(2n+1) is the adjoint group of type C_n
                let dual = langlands_dual(&simply_connected(&b)?);
                let psp = RootDatum::semisimple(&[ty(Family::C, rank)], &Form::Adjoint)?;
                ok &= root_datum_isomorphic(&dual, &psp).is_some();
                checks.push(check(&format!("b{rank}_to_c{rank}_swap"), ok, json!({"subgroups": subs.len()})));
            }
        }
    }
    Ok(checks)
}

/// Runs the items concurrently; results come back in the order requested.
pub fn regression_suite(items: &[RegressionItem], corrupt_pairing: bool) -> RegressionReport {
    let results: Vec<RegressionResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = items.iter().map(|&item| scope.spawn(move || (item, run_item(item, corrupt_pairing)))).collect();
        handles
            .into_iter()
            .map(|h| {
                let (item, r) = h.join().expect("regression item panicked");
                match r {
                    Ok(checks) => {
                        let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
                        RegressionResult { item, pass: failures.is_empty(), checks, failures }
                    }
                    Err(e) => RegressionResult { item, pass: false, checks: Vec::new(), failures: vec![e.to_string()] },
                }
            })
            .collect()
    });
    RegressionReport { passed: results.iter().all(|r| r.pass), results }
}
