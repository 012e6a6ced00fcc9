//! The decomposition pipeline: for a labelled row v and a composition λ,
//! split the induced bimodule slice into symmetric-group permutation modules
//! via double cosets of the row stabilizer against the Young subgroup.
//!
//! Every report is deterministic: double cosets are ordered by least
//! tabloid, classes by canonical representative, and isomorphism-type claims
//! use the sorted partition of each attached composition (permutation
//! modules of conjugate Young subgroups are isomorphic; the composition
//! itself depends on the pinned representative).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partial::{ClassSignature, PartialDiagram};
use crate::perm::{Composition, Permutation};
use crate::stabilizer::{
    class_representatives, double_coset_reps, image_young, intersection_with_conjugate,
    stabilizer_product,
};
use crate::stratify::Algebra;
use crate::tabloid::coset_count;
use crate::Caps;

/// One double coset: the pinned witness and everything derived from it.
#[derive(Debug, Clone)]
pub struct UvRow {
    pub witness: Permutation,
    pub orbit_size: u64,
    /// Order of the full subgroup attached to the witness.
    pub group_order: u64,
    /// Order of its part supported on the labelled dots (the table column).
    pub alpha_order: u64,
    /// Orbit sizes of the image group, ordered by minimal orbit element.
    pub nu: Composition,
    pub nu_partition: Vec<usize>,
    /// dim kΣ_n ⊗_{Σ_ν} k = n!/∏νᵢ!.
    pub module_dimension: u64,
}

#[derive(Debug, Clone)]
pub struct UvDecomposition {
    pub r: usize,
    pub n: usize,
    pub l: usize,
    pub v: PartialDiagram,
    pub lambda: Composition,
    pub stabilizer_order: u64,
    pub coset_count: u64,
    pub rows: Vec<UvRow>,
    /// Multiset of partitions, sorted descending.
    pub partition_multiset: Vec<Vec<usize>>,
    pub total_dimension: u64,
}

/// Decompose the slice generated by one labelled row.
pub fn decompose_uv(
    v: &PartialDiagram,
    l: usize,
    lambda: &Composition,
    caps: &Caps,
) -> Result<UvDecomposition> {
    let n = v.labelled_count();
    if !v.in_vnl(l) {
        return Err(Error::Invalid(format!("{v} is not in V_{n}^{l}")));
    }
    if lambda.sum() != l {
        return Err(Error::Invalid(format!(
            "λ = {lambda} is not a composition of l = {l}"
        )));
    }
    let sp = stabilizer_product(v, l)?;
    let cosets = double_coset_reps(&sp, lambda, caps.coset)?;
    let labelled_dots: Vec<usize> = sp
        .contracted()
        .parts()
        .iter()
        .filter(|p| p.labelled)
        .flat_map(|p| p.dots.iter().map(|&d| d as usize))
        .collect();
    let mut rows = Vec::with_capacity(cosets.len());
    for dc in &cosets {
        let elements = intersection_with_conjugate(&sp, &dc.witness, lambda, caps.group)?;
        let nu = image_young(&sp, &elements)?;
        let alpha_order = elements
            .iter()
            .filter(|z| (0..l).all(|d| labelled_dots.contains(&d) || z.apply(d) == d))
            .count() as u64;
        let module_dimension = coset_count(&nu) as u64;
        rows.push(UvRow {
            witness: dc.witness.clone(),
            orbit_size: dc.orbit_size,
            group_order: elements.len() as u64,
            alpha_order,
            nu_partition: nu.partition(),
            nu,
            module_dimension,
        });
    }
    let mut partition_multiset: Vec<Vec<usize>> =
        rows.iter().map(|r| r.nu_partition.clone()).collect();
    partition_multiset.sort_unstable_by(|a, b| b.cmp(a));
    let total_dimension = rows.iter().map(|r| r.module_dimension).sum();
    Ok(UvDecomposition {
        r: v.r(),
        n,
        l,
        v: v.clone(),
        lambda: lambda.clone(),
        stabilizer_order: sp.order() as u64,
        coset_count: coset_count(lambda) as u64,
        rows,
        partition_multiset,
        total_dimension,
    })
}

/// One equivalence class of rows inside the full layer restriction.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub signature: ClassSignature,
    pub representative: PartialDiagram,
    pub class_size: u64,
    pub decomposition: UvDecomposition,
}

#[derive(Debug, Clone)]
pub struct RestrictionDecomposition {
    pub r: usize,
    pub n: usize,
    pub l: usize,
    pub lambda: Composition,
    pub classes: Vec<ClassEntry>,
    pub total_dimension: u64,
}

/// Decompose the whole layer restriction: one slice per equivalence class
/// of rows in `V_n^l`. Empty for n > l.
pub fn decompose_restriction(
    r: usize,
    n: usize,
    l: usize,
    lambda: &Composition,
    caps: &Caps,
) -> Result<RestrictionDecomposition> {
    if lambda.sum() != l {
        return Err(Error::Invalid(format!(
            "λ = {lambda} is not a composition of l = {l}"
        )));
    }
    let mut classes = Vec::new();
    if n <= l {
        for (sig, rep, class_size) in
            class_representatives(Algebra::Partition, r, n, l, caps.basis)?
        {
            let decomposition = decompose_uv(&rep, l, lambda, caps)?;
            classes.push(ClassEntry {
                signature: sig,
                representative: rep,
                class_size,
                decomposition,
            });
        }
    }
    let total_dimension = classes.iter().map(|c| c.decomposition.total_dimension).sum();
    Ok(RestrictionDecomposition {
        r,
        n,
        l,
        lambda: lambda.clone(),
        classes,
        total_dimension,
    })
}

// --- reports -----------------------------------------------------------------

/// Conventions pinned by the test suite; embedded in every report so runs
/// are self-describing.
pub fn conventions() -> serde_json::Value {
    serde_json::json!({
        "composition": "left-to-right",
        "propagating_permutation": "top-part-to-bottom-part",
        "double_coset_representative": "witness-of-least-tabloid",
        "isomorphism_type": "sorted-partition-of-nu",
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UvRowJson {
    pub witness: String,
    pub orbit_size: u64,
    pub group_order: u64,
    pub alpha_order: u64,
    pub nu: Vec<usize>,
    pub nu_partition: Vec<usize>,
    pub module_dimension: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UvBodyJson {
    pub r: usize,
    pub n: usize,
    pub l: usize,
    pub v: String,
    pub lambda: Vec<usize>,
    pub stabilizer_order: u64,
    pub coset_count: u64,
    pub double_cosets: Vec<UvRowJson>,
    pub partition_multiset: Vec<Vec<usize>>,
    pub total_dimension: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignatureEntryJson {
    pub size: usize,
    pub labelled: bool,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassEntryJson {
    pub signature: Vec<SignatureEntryJson>,
    pub representative: String,
    pub class_size: u64,
    pub decomposition: UvBodyJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RestrictionBodyJson {
    pub r: usize,
    pub n: usize,
    pub l: usize,
    pub lambda: Vec<usize>,
    pub classes: Vec<ClassEntryJson>,
    pub total_dimension: u64,
}

impl UvDecomposition {
    pub fn to_body(&self) -> UvBodyJson {
        UvBodyJson {
            r: self.r,
            n: self.n,
            l: self.l,
            v: self.v.to_string(),
            lambda: self.lambda.parts().to_vec(),
            stabilizer_order: self.stabilizer_order,
            coset_count: self.coset_count,
            double_cosets: self
                .rows
                .iter()
                .map(|row| UvRowJson {
                    witness: row.witness.to_string(),
                    orbit_size: row.orbit_size,
                    group_order: row.group_order,
                    alpha_order: row.alpha_order,
                    nu: row.nu.parts().to_vec(),
                    nu_partition: row.nu_partition.clone(),
                    module_dimension: row.module_dimension,
                })
                .collect(),
            partition_multiset: self.partition_multiset.clone(),
            total_dimension: self.total_dimension,
        }
    }

    /// Aligned text rendering, one line per double coset.
    pub fn render_text(&self) -> String {
        render_uv_body(&self.to_body())
    }
}

/// Text rendering of a slice report, shared by fresh runs and re-rendered
/// JSON files. Columns mirror the worked table: representative, orbit size,
/// attached group orders, ν, module dimension.
pub fn render_uv_body(body: &UvBodyJson) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "U_v decomposition  r={} n={} l={}  v={}  lambda={}\n",
        body.r,
        body.n,
        body.l,
        body.v,
        join_usize(&body.lambda)
    ));
    out.push_str(&format!(
        "stabilizer order {}   tabloids {}   double cosets {}\n",
        body.stabilizer_order,
        body.coset_count,
        body.double_cosets.len()
    ));
    out.push_str(&render_rows(&body.double_cosets));
    out.push_str(&format!("total dimension {}\n", body.total_dimension));
    out
}

fn join_usize(parts: &[usize]) -> String {
    let strings: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    strings.join(",")
}

fn render_rows(rows: &[UvRowJson]) -> String {
    let mut table: Vec<[String; 6]> = vec![[
        "pi_i".into(),
        "orbit".into(),
        "|Pi_nu|".into(),
        "|alpha|".into(),
        "Sigma_nu".into(),
        "dim".into(),
    ]];
    for row in rows {
        table.push([
            row.witness.clone(),
            row.orbit_size.to_string(),
            row.group_order.to_string(),
            row.alpha_order.to_string(),
            format!("({})", join_usize(&row.nu)),
            row.module_dimension.to_string(),
        ]);
    }
    let mut widths = [0usize; 6];
    for line in &table {
        for (w, cell) in widths.iter_mut().zip(line.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for line in &table {
        let rendered: Vec<String> = line
            .iter()
            .zip(widths.iter())
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(rendered.join("  ").trim_end());
        out.push('\n');
    }
    out
}

impl RestrictionDecomposition {
    pub fn to_body(&self) -> RestrictionBodyJson {
        RestrictionBodyJson {
            r: self.r,
            n: self.n,
            l: self.l,
            lambda: self.lambda.parts().to_vec(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassEntryJson {
                    signature: c
                        .signature
                        .entries
                        .iter()
                        .map(|&(size, labelled, count)| SignatureEntryJson {
                            size,
                            labelled,
                            count,
                        })
                        .collect(),
                    representative: c.representative.to_string(),
                    class_size: c.class_size,
                    decomposition: c.decomposition.to_body(),
                })
                .collect(),
            total_dimension: self.total_dimension,
        }
    }

    pub fn render_text(&self) -> String {
        render_restriction_body(&self.to_body())
    }
}

pub fn render_restriction_body(body: &RestrictionBodyJson) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "layer restriction  r={} n={} l={}  lambda={}\n",
        body.r,
        body.n,
        body.l,
        join_usize(&body.lambda)
    ));
    if body.classes.is_empty() {
        out.push_str("[]\n");
        return out;
    }
    for c in &body.classes {
        let sig: Vec<String> = c
            .signature
            .iter()
            .map(|e| format!("{}{}x{}", if e.labelled { "L" } else { "U" }, e.size, e.count))
            .collect();
        out.push_str(&format!(
            "\nclass {}  representative {}  size {}\n",
            if sig.is_empty() { "-".to_string() } else { sig.join(" ") },
            c.representative,
            c.class_size
        ));
        out.push_str(&render_rows(&c.decomposition.double_cosets));
        out.push_str(&format!(
            "class dimension {}\n",
            c.decomposition.total_dimension
        ));
    }
    out.push_str(&format!("\ntotal dimension {}\n", body.total_dimension));
    out
}

/// Wrap a report body with version, kind and the run configuration.
pub fn wrap_report(
    kind: &str,
    body: serde_json::Value,
    config: serde_json::Value,
) -> serde_json::Value {
    serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "kind": kind,
        "config": config,
        "conventions": conventions(),
        "report": body,
    })
}
