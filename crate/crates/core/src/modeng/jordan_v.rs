//! The torus operator `h(√ω)` on the span of `Ū·1` and the `Ū s ε(z)·1`
//! inside `Ind_T k_θ`, and its Jordan structure.

use crate::arith;
use crate::chars::{extend_character, Character};
use crate::error::{precondition, Result};
use crate::ffield::{construct_field, embed_raw, sqrt_ext, Fe, Field};
use crate::jordan::{jordan_form, min_poly_krylov, JordanForm};
use crate::linalg::{Echelon, Matrix};
use crate::poly::{self, Poly};

use super::induced::{InducedModule, ModuleVector};

pub struct JordanReport {
    pub q: u64,
    pub r: u64,
    /// Exponent of the character on `F_q` (0 for the trivial case).
    pub theta_exponent: u64,
    pub coeff: Field,
    /// `θ(√ω)`, the eigenvalue of `h(√ω)` on `Ū·1`.
    pub kappa: Fe,
    pub operator: Matrix,
    pub form: JordanForm,
    /// Minimal polynomial from Krylov sequences.
    pub min_poly: Poly,
    /// `(m, l)` with `q - 1 = m l`, `m` a power of `r`, `gcd(l, r) = 1`.
    pub rpart: (u64, u64),
}

impl JordanReport {
    /// `{J_1(κ), J_1(κ^{-1})} ∪ {J_m(κλ) : λ^l = 1}` as sorted
    /// `(eigenvalue, size, multiplicity)`.
    pub fn predicted(&self) -> Vec<(Fe, usize, usize)> {
        let f = &self.coeff;
        let (m, l) = self.rpart;
        let mut blocks = vec![(self.kappa, 1usize), (f.inv(self.kappa).unwrap(), 1)];
        for lambda in f.units().filter(|&x| f.pow(x, l) == 1) {
            blocks.push((f.mul(self.kappa, lambda), m as usize));
        }
        blocks.sort();
        let mut out: Vec<(Fe, usize, usize)> = Vec::new();
        for (e, s) in blocks {
            match out.last_mut() {
                Some(last) if last.0 == e && last.1 == s => last.2 += 1,
                _ => out.push((e, s, 1)),
            }
        }
        out
    }

    /// `t^{q-1} - κ^{q-1}`.
    pub fn predicted_min_poly(&self) -> Poly {
        let f = &self.coeff;
        let n = (self.q - 1) as usize;
        let mut p = poly::monomial(1, n);
        p[0] = f.neg(f.pow(self.kappa, self.q - 1));
        poly::trim(p)
    }

    pub fn format_blocks(&self, blocks: &[(Fe, usize, usize)]) -> String {
        let parts: Vec<String> = blocks
            .iter()
            .map(|&(e, s, k)| {
                let base = format!("J_{s}({})", self.coeff.format(e));
                if k > 1 {
                    format!("{base}^{k}")
                } else {
                    base
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.form.blocks.iter().map(|b| b.size).collect();
        s.sort();
        s
    }
}

/// Builds `Ind_T k_θ` at level `q^2` for `θ` on `F_q` (extended to the
/// level), and analyses `𝒜 = h(√ω)` on
/// `V = span{Ū·1, Ū s ε(z)·1 : z ∈ F_q}` with `Ū = Σ_{x ∈ F_q} ε(x)`.
pub fn jordan_on_v(theta: &Character) -> Result<JordanReport> {
    let base = theta.domain().clone();
    let r = theta.target().characteristic();
    if r == base.characteristic() as u64 {
        return precondition("coefficient characteristic must differ from the field characteristic");
    }
    let level_degree = 2 * base.degree();
    let theta_l = extend_character(theta, level_degree)?;
    let level = construct_field(base.characteristic() as u64, level_degree)?;
    let module = InducedModule::torus(&theta_l);
    let f = module.coeff().clone();
    let root = sqrt_ext(&base.element(base.generator()))?;
    let c = embed_raw(root.field(), root.value(), &level)?;
    let a = module.sl2().h(c)?;
    let kappa = theta_l.eval(c);

    let vbasis = v_basis(&module, &base)?;
    let n = vbasis.len();
    let mut ech = Echelon::with_tracking(&f, module.dim());
    for v in &vbasis {
        if !ech.insert(module.to_dense(v)) {
            return precondition("spanning vectors of V are dependent");
        }
    }
    let mut cols = Vec::with_capacity(n);
    for v in &vbasis {
        let img = module.act(&a, v)?;
        let coords = ech
            .input_coordinates(&module.to_dense(&img))
            .ok_or_else(|| crate::Error::Precondition("V is not stable under h(√ω)".into()))?;
        cols.push(coords);
    }
    let operator = Matrix::from_columns(&f, n, &cols);
    let form = jordan_form(&operator)?;
    let min_poly = min_poly_krylov(&operator);
    let q = base.size() as u64;
    Ok(JordanReport {
        q,
        r,
        theta_exponent: theta.exponent(),
        coeff: f,
        kappa,
        operator,
        form,
        min_poly,
        rpart: arith::rpart_decompose(q - 1, r),
    })
}

/// `[Ū·1, Ū s ε(z)·1 for z ∈ F_q in encoding order]`.
pub fn v_basis(module: &InducedModule, base: &Field) -> Result<Vec<ModuleVector>> {
    let sl2 = module.sl2();
    let ubar = module.ubar(base)?;
    let one = module.one();
    let mut out = vec![module.act_algebra(&ubar, &one)?];
    for z in base.elements() {
        let zz = embed_raw(base, z, module.level())?;
        let v = module.act(&sl2.mul(&sl2.s(), &sl2.eps(zz)), &one)?;
        out.push(module.act_algebra(&ubar, &v)?);
    }
    Ok(out)
}
