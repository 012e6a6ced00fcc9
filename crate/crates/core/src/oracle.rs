//! Independent verification of the decompositions: build the claimed module
//! from generators and relations over exact rationals, compute its
//! symmetric-group character, and compare with the character of the claimed
//! direct sum. Permutation modules over a characteristic-zero field are
//! isomorphic exactly when their characters agree, so equality here is the
//! isomorphism criterion.

use std::collections::HashMap;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::decompose::{decompose_restriction, UvDecomposition};
use crate::delta::format_rational;
use crate::diagram::{multiply_diagrams, SetPartitionDiagram};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, RationalMatrix, SparseRow};
use crate::partial::PartialDiagram;
use crate::perm::{all_permutations, partitions_of, Composition, Permutation};
use crate::stabilizer::{rho, stabilizer_product};
use crate::stratify::{embed_perm, layer_restriction_basis, Algebra};
use crate::tabloid::{coset_count, cosets, Tabloid};
use crate::Caps;

/// A class function of Σ_n: one exact rational per conjugacy class, classes
/// indexed by the partitions of n in descending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub n: usize,
    pub values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn zero(n: usize) -> Self {
        ClassFunction {
            n,
            values: vec![BigRational::zero(); partitions_of(n).len()],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// The pinned class representative of cycle type μ: consecutive cycles
/// (1 … μ₁)(μ₁+1 … μ₁+μ₂)…
pub fn class_representative(mu: &[usize], n: usize) -> Permutation {
    debug_assert_eq!(mu.iter().sum::<usize>(), n);
    let mut images: Vec<usize> = (0..n).collect();
    let mut offset = 0;
    for &len in mu {
        for k in 0..len {
            images[offset + k] = offset + (k + 1) % len;
        }
        offset += len;
    }
    Permutation::from_images(images).expect("cycle representative is a bijection")
}

/// Character of the permutation module kΣ_n ⊗_{Σ_ν} k: the value at a class
/// is the number of ν-tabloids fixed by its representative.
pub fn perm_character(n: usize, nu: &Composition, caps: &Caps) -> Result<ClassFunction> {
    if nu.sum() != n {
        return Err(Error::Invalid(format!("ν = {nu} is not a composition of {n}")));
    }
    let tabs = cosets(nu, caps.coset)?;
    let values = partitions_of(n)
        .into_iter()
        .map(|mu| {
            let rep = class_representative(&mu, n);
            let fixed = tabs.iter().filter(|t| t.is_fixed_by(&rep)).count();
            BigRational::from_integer(fixed.into())
        })
        .collect();
    Ok(ClassFunction { n, values })
}

/// The module built by generators and relations, together with the induced
/// action of the Coxeter generators of Σ_n on the quotient basis.
pub struct QuotientModule {
    pub n: usize,
    pub dimension: usize,
    pub generator_actions: Vec<RationalMatrix>,
}

/// Build kΣ_n ⊗_{k(∏_α×∏_β)} kΣ_l ⊗_{kΣ_λ} k explicitly: a free space on
/// symbols (η, t) for η ∈ Σ_n and t a λ-tabloid, with one relation
/// (η·ρ(ζ), t) − (η, ζ·t) per stabilizer generator ζ and symbol.
pub fn build_quotient_module(
    v: &PartialDiagram,
    l: usize,
    lambda: &Composition,
    caps: &Caps,
) -> Result<QuotientModule> {
    let sp = stabilizer_product(v, l)?;
    let n = sp.n();
    let tabs = cosets(lambda, caps.coset)?;
    let perms = all_permutations(n, caps.group)?;
    let columns = perms.len() as u128 * tabs.len() as u128;
    if columns > caps.matrix as u128 {
        return Err(Error::OracleTooLarge {
            needed: columns,
            cap: caps.matrix as u128,
        });
    }
    let perm_index: HashMap<&Permutation, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let tab_index: HashMap<&Tabloid, usize> =
        tabs.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let symbol = |pi: usize, ti: usize| pi * tabs.len() + ti;

    let mut echelon = Echelon::new();
    for zeta in sp.generators() {
        let image = rho(&sp, zeta)?;
        let eta_map: Vec<usize> = perms.iter().map(|eta| perm_index[&eta.mul(&image)]).collect();
        let tab_map: Vec<usize> = tabs.iter().map(|t| tab_index[&t.act(zeta)]).collect();
        for (pi, _) in perms.iter().enumerate() {
            for (ti, _) in tabs.iter().enumerate() {
                let a = symbol(eta_map[pi], ti);
                let b = symbol(pi, tab_map[ti]);
                if a != b {
                    let row: SparseRow = if a < b {
                        vec![(a, BigRational::from_integer(1.into())),
                             (b, BigRational::from_integer((-1).into()))]
                    } else {
                        vec![(b, BigRational::from_integer((-1).into())),
                             (a, BigRational::from_integer(1.into()))]
                    };
                    echelon.insert(row);
                }
            }
        }
    }

    let free = echelon.free_columns(columns as usize);
    let dense_index: HashMap<usize, usize> =
        free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let dimension = free.len();

    let mut generator_actions = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let s = Permutation::adjacent_transposition(n, k);
        let left_map: Vec<usize> = perms.iter().map(|eta| perm_index[&s.mul(eta)]).collect();
        let mut matrix = RationalMatrix::zero(dimension, dimension);
        for (col, &sym) in free.iter().enumerate() {
            let (pi, ti) = (sym / tabs.len(), sym % tabs.len());
            let image = symbol(left_map[pi], ti);
            for (c, coeff) in echelon.express(image) {
                *matrix.at_mut(dense_index[&c], col) += coeff;
            }
        }
        generator_actions.push(matrix);
    }
    Ok(QuotientModule { n, dimension, generator_actions })
}

/// Exact traces of the pinned class representatives, each written as a word
/// in the Coxeter generators.
pub fn character_of_action(module: &QuotientModule) -> ClassFunction {
    let n = module.n;
    let values = partitions_of(n)
        .into_iter()
        .map(|mu| {
            let word = class_representative(&mu, n).coxeter_word();
            if word.is_empty() {
                return BigRational::from_integer(module.dimension.into());
            }
            let mut acc = module.generator_actions[word[0]].clone();
            for &k in &word[1..] {
                acc = acc.mul(&module.generator_actions[k]);
            }
            acc.trace()
        })
        .collect();
    ClassFunction { n, values }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub class: Vec<usize>,
    pub module_trace: String,
    pub claimed_trace: String,
    pub equal: bool,
}

/// What equality of these reports actually certifies.
pub const ORACLE_CRITERION: &str =
    "character equality over a characteristic-0 field, which decides isomorphism \
     of the permutation modules being compared";

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub criterion: &'static str,
    pub ok: bool,
    pub dimension: u64,
    pub claimed_dimension: u64,
    pub classes: Vec<ClassRow>,
}

impl OracleReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "module dimension {}   claimed {}   {}\n",
            self.dimension,
            self.claimed_dimension,
            if self.ok { "VERIFIED" } else { "MISMATCH" }
        ));
        for row in &self.classes {
            let class: Vec<String> = row.class.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!(
                "class ({}) module {} claimed {}{}\n",
                class.join(","),
                row.module_trace,
                row.claimed_trace,
                if row.equal { "" } else { "   <- differs" }
            ));
        }
        out
    }
}

fn compare_characters(
    module: &ClassFunction,
    claimed: &ClassFunction,
    dimension: u64,
    claimed_dimension: u64,
) -> OracleReport {
    let classes: Vec<ClassRow> = partitions_of(module.n)
        .into_iter()
        .zip(module.values.iter().zip(claimed.values.iter()))
        .map(|(class, (m, c))| ClassRow {
            class,
            module_trace: format_rational(m),
            claimed_trace: format_rational(c),
            equal: m == c,
        })
        .collect();
    let ok = dimension == claimed_dimension && classes.iter().all(|c| c.equal);
    OracleReport {
        criterion: ORACLE_CRITERION,
        ok,
        dimension,
        claimed_dimension,
        classes,
    }
}

/// Verify one slice decomposition: the module built from relations must
/// have the same dimension and the same character as the claimed direct sum
/// of permutation modules.
pub fn verify_decomposition(claim: &UvDecomposition, caps: &Caps) -> Result<OracleReport> {
    let module = build_quotient_module(&claim.v, claim.l, &claim.lambda, caps)?;
    let lhs = character_of_action(&module);
    let mut rhs = ClassFunction::zero(claim.n);
    for row in &claim.rows {
        rhs = rhs.add(&perm_character(claim.n, &row.nu, caps)?);
    }
    Ok(compare_characters(
        &lhs,
        &rhs,
        module.dimension as u64,
        claim.total_dimension,
    ))
}

/// Verify the whole layer restriction against raw diagram combinatorics:
/// build the layer slice tensored with the tabloid space, impose the
/// balancing relations for the embedded Coxeter generators of Σ_l, and
/// compare its Σ_n-character with the sum over all class slices.
pub fn verify_full_restriction(
    r: usize,
    n: usize,
    l: usize,
    lambda: &Composition,
    caps: &Caps,
) -> Result<OracleReport> {
    if lambda.sum() != l {
        return Err(Error::Invalid(format!(
            "λ = {lambda} is not a composition of l = {l}"
        )));
    }
    let basis = layer_restriction_basis(Algebra::Partition, r, n, l, caps.basis)?;
    let tabs = cosets(lambda, caps.coset)?;
    let columns = basis.len() as u128 * tabs.len() as u128;
    if columns > caps.matrix as u128 {
        return Err(Error::OracleTooLarge { needed: columns, cap: caps.matrix as u128 });
    }
    let diagram_index: HashMap<&SetPartitionDiagram, usize> =
        basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let tab_index: HashMap<&Tabloid, usize> =
        tabs.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let symbol = |di: usize, ti: usize| di * tabs.len() + ti;

    let mut echelon = Echelon::new();
    for k in 0..l.saturating_sub(1) {
        let g = Permutation::adjacent_transposition(l, k);
        let g_hat = embed_perm(Algebra::Partition, &g, r)?;
        let right_map: Vec<usize> = basis
            .iter()
            .map(|d| {
                let (prod, loops) = multiply_diagrams(d, &g_hat)?;
                if loops != 0 {
                    return Err(Error::Invalid("right action produced a loop".into()));
                }
                diagram_index
                    .get(&prod)
                    .copied()
                    .ok_or_else(|| Error::Invalid("right action left the layer basis".into()))
            })
            .collect::<Result<_>>()?;
        let tab_map: Vec<usize> = tabs.iter().map(|t| tab_index[&t.act(&g)]).collect();
        for (di, &rdi) in right_map.iter().enumerate() {
            for (ti, &tti) in tab_map.iter().enumerate() {
                let a = symbol(rdi, ti);
                let b = symbol(di, tti);
                if a != b {
                    let (lo, hi, lo_sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                    echelon.insert(vec![
                        (lo, BigRational::from_integer(lo_sign.into())),
                        (hi, BigRational::from_integer((-lo_sign).into())),
                    ]);
                }
            }
        }
    }

    let free = echelon.free_columns(columns as usize);
    let dense_index: HashMap<usize, usize> =
        free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let dimension = free.len();

    let mut generator_actions = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let s = Permutation::adjacent_transposition(n, k);
        let s_hat = embed_perm(Algebra::Partition, &s, r)?;
        let left_map: Vec<usize> = basis
            .iter()
            .map(|d| {
                let (prod, loops) = multiply_diagrams(&s_hat, d)?;
                if loops != 0 {
                    return Err(Error::Invalid("left action produced a loop".into()));
                }
                diagram_index
                    .get(&prod)
                    .copied()
                    .ok_or_else(|| Error::Invalid("left action left the layer basis".into()))
            })
            .collect::<Result<_>>()?;
        let mut matrix = RationalMatrix::zero(dimension, dimension);
        for (col, &sym) in free.iter().enumerate() {
            let (di, ti) = (sym / tabs.len(), sym % tabs.len());
            let image = symbol(left_map[di], ti);
            for (c, coeff) in echelon.express(image) {
                *matrix.at_mut(dense_index[&c], col) += coeff;
            }
        }
        generator_actions.push(matrix);
    }
    let module = QuotientModule { n, dimension, generator_actions };
    let lhs = character_of_action(&module);

    let claimed = decompose_restriction(r, n, l, lambda, caps)?;
    let mut rhs = ClassFunction::zero(n);
    for class in &claimed.classes {
        for row in &class.decomposition.rows {
            rhs = rhs.add(&perm_character(n, &row.nu, caps)?);
        }
    }
    Ok(compare_characters(
        &lhs,
        &rhs,
        module.dimension as u64,
        claimed.total_dimension,
    ))
}

/// Deliberately corrupt the first summand of a claim (replace its ν by a
/// non-conjugate composition) for the negative-control check.
pub fn corrupt_claim(claim: &UvDecomposition) -> Result<UvDecomposition> {
    if claim.n < 2 {
        return Err(Error::Invalid(
            "no non-conjugate composition exists below n = 2".into(),
        ));
    }
    let mut out = claim.clone();
    let row = out
        .rows
        .first_mut()
        .ok_or_else(|| Error::Invalid("claim has no summands to corrupt".into()))?;
    let replacement = if row.nu_partition == vec![claim.n] {
        Composition::new(vec![1; claim.n])?
    } else {
        Composition::new(vec![claim.n])?
    };
    row.nu_partition = replacement.partition();
    row.module_dimension = coset_count(&replacement) as u64;
    row.nu = replacement;
    out.partition_multiset = out.rows.iter().map(|r| r.nu_partition.clone()).collect();
    out.partition_multiset.sort_unstable_by(|a, b| b.cmp(a));
    out.total_dimension = out.rows.iter().map(|r| r.module_dimension).sum();
    Ok(out)
}
