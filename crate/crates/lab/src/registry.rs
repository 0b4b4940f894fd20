//! Static list of the mathematical invariants the suites must exercise.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariant {
    pub id: &'static str,
    pub module: &'static str,
    pub statement: &'static str,
}

const fn inv(id: &'static str, module: &'static str, statement: &'static str) -> Invariant {
    Invariant { id, module, statement }
}

pub static INVARIANTS: &[Invariant] = &[
    inv("young.catalog", "young", "numeric conjugate of each catalog Φ matches its stated partner"),
    inv("young.biconjugation", "young", "conjugate(conjugate(Φ)) = Φ on the probe grid"),
    inv("young.inequality", "young", "xy ≤ Φ(x) + Ψ(y)"),
    inv("young.equality", "young", "Φ(x) + Ψ(φ(x)) = xφ(x)"),
    inv("young.monotone", "young", "Φ₁ ≤ Φ₂ implies Ψ₁ ≥ Ψ₂"),
    inv("young.delta2", "young", "Φ(2x) ≤ KΦ(x) holds for power functions and fails for eˣ − x − 1"),
    inv("group.symmetry", "group", "τ(g) = τ(g⁻¹)"),
    inv("group.subadditivity", "group", "τ(gh) ≤ τ(g) + τ(h)"),
    inv("group.nesting", "group", "Bₙ ⊊ Bₙ₊₁ for infinite groups"),
    inv("group.sandwich", "group", "c₁nᵈ ≤ |Bₙ| ≤ c₂nᵈ"),
    inv("group.order", "group", "fitted growth order matches d"),
    inv("group.weight", "group", "ω(e) = 1, 1/ω ≤ 1, ω(st) ≤ ω(s)ω(t)"),
    inv("cocycle.identity", "cocycle", "Ω(r,s)Ω(rs,t) = Ω(s,t)Ω(r,st)"),
    inv("cocycle.normalized", "cocycle", "Ω(s,e) = Ω(e,s) = 1"),
    inv("cocycle.broken", "cocycle", "a perturbed coboundary violates the cocycle identity"),
    inv("cocycle.product", "cocycle", "products of cocycles are cocycles"),
    inv("cocycle.polar", "cocycle", "|Ω| and Ω/|Ω| are cocycles with values in ℝ₊ and 𝕋"),
    inv("cocycle.witness", "cocycle", "|Ω(s,t)| ≤ u(s) + v(t) on the verified ball"),
    inv("cocycle.composition", "cocycle", "the coboundary of ω₁ω₂ is the product of coboundaries"),
    inv("norms.sandwich", "orlicz", "N_Φ ≤ ‖·‖_Φ ≤ 2N_Φ"),
    inv("norms.agreement", "orlicz", "stationarity and one-dimensional Orlicz norms agree"),
    inv("norms.unit-ball", "orlicz", "N_Φ(f) ≤ 1 iff Σ Φ(|f|) ≤ 1"),
    inv("norms.homogeneity", "orlicz", "‖cf‖ = |c|‖f‖"),
    inv("norms.triangle", "orlicz", "‖f + g‖ ≤ ‖f‖ + ‖g‖"),
    inv("norms.dual-sampling", "orlicz", "Σ|fv| ≤ ‖f‖_Φ whenever Σ Ψ(|v|) ≤ 1"),
    inv("norms.pnorm", "orlicz", "N_Φ(f) = ‖f‖_p p^(−1/p) for Φ = xᵖ/p"),
    inv("norms.holder", "orlicz", "Σ|fg| ≤ min{N_Φ(f)‖g‖_Ψ, ‖f‖_Φ N_Ψ(g)}"),
    inv("norms.membership", "orlicz", "1/ω_β has finite Ψ-modular sums iff β > d/l"),
    inv("twisted.associativity", "twisted", "(f⋆g)⋆h = f⋆(g⋆h)"),
    inv("twisted.delta-associativity", "twisted", "associativity on deltas is the cocycle identity"),
    inv("twisted.unit", "twisted", "δ_e⋆f = f⋆δ_e = f"),
    inv("twisted.l1", "twisted", "‖f⋆g‖₁ ≤ sup|Ω| ‖f‖₁‖g‖₁"),
    inv("twisted.deltas", "twisted", "δ_s⋆δ_t = Ω(s,t)δ_st"),
    inv("twisted.oracle", "twisted", "finite sums match the naive double loop"),
    inv("twisted.duality", "twisted", "⟨f⋆g,h⟩ = ⟨f,g⋆′h⟩ = ⟨g,h⋆′f⟩"),
    inv("twisted.dual-action", "twisted", "‖g⋆′h‖_Ψ ≤ 2Ĉ‖g‖_Φ N_Ψ(h)"),
    inv("twisted.probe", "twisted", "Ĉ stays bounded as the sampling ball grows"),
    inv("twisted.splitting", "twisted", "⟨f⋆g,h⟩ = ⟨fu, ξ(g,h)⟩ + ⟨gv, η(f,h)⟩"),
    inv("twisted.zeta", "twisted", "Σ f ξ(g,h) = Σ h ζ(f,g)"),
    inv("twisted.xi-bound", "twisted", "|ξ(g,h)| ≤ |h| ∗ |ǧ|"),
    inv("twisted.lambda-isometry", "twisted", "‖Λ_ω f‖_{Φ,ω} = ‖f‖_Φ"),
    inv("twisted.lambda-intertwining", "twisted", "Λ_ω(f⋆_Ω g) = Λ_ω f ∗ Λ_ω g"),
    inv("twisted.augmentation", "twisted", "Σ(f∗g) = Σf · Σg"),
];
