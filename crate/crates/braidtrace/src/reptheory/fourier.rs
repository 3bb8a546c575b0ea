//! Fourier (exotic Fourier transform) matrices {φ, ψ} pairing unipotent
//! characters with fake degrees: Deg_φ = Σ_ψ {φ, ψ} Feg_ψ.
//!
//! Type A and I2(3) use the identity matrix; I2(4) and I2(6) ship with the
//! crate; any other dihedral table can be supplied as a JSON file in a
//! user data directory. Every table is validated on load against the
//! independently computed generic degrees.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::coxeter::{CoxeterSystem, CoxeterType};
use crate::exactmath::{rat, CycloLaurent, Rat, Ring};
use crate::reptheory::chartable::{CharLabel, CharTable};
use crate::reptheory::degrees::DegreeData;
use crate::{validation, Result};

const G2_JSON: &str = include_str!("../../data/fourier_g2.json");

/// The symmetric matrix {φ, ψ}, rows/columns in CharTable order.
pub struct FourierTable {
    entries: Vec<Vec<Rat>>,
}

#[derive(Deserialize)]
struct FourierFile {
    #[serde(rename = "type")]
    ty: String,
    labels: Vec<String>,
    matrix: Vec<Vec<String>>,
}

impl FourierTable {
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Load the table for the system, preferring a user data directory
    /// (file `fourier_<type>.json`, e.g. `fourier_I2(8).json`) over the
    /// builtins.
    pub fn load(
        sys: &CoxeterSystem,
        table: &CharTable,
        bundle: &[DegreeData],
        data_dir: Option<&Path>,
    ) -> Result<Self> {
        if let Some(dir) = data_dir {
            let path = dir.join(format!("fourier_{}.json", sys.coxeter_type()));
            if path.exists() {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    crate::Error::Validation(format!("cannot read {}: {e}", path.display()))
                })?;
                let t = Self::from_json(&text, sys, table)?;
                t.validate(table, bundle)?;
                return Ok(t);
            }
        }
        let t = match sys.coxeter_type() {
            CoxeterType::A(_) | CoxeterType::I2(3) => Self::identity(table.num_chars()),
            CoxeterType::I2(4) => Self::builtin_bc2(table),
            CoxeterType::I2(6) => Self::from_json(G2_JSON, sys, table)?,
            CoxeterType::I2(m) => {
                return validation(format!(
                    "missing Fourier table for type I2({m}); provide fourier_I2({m}).json via --data-dir"
                ))
            }
        };
        t.validate(table, bundle)?;
        Ok(t)
    }

    fn identity(n: usize) -> Self {
        let mut entries = vec![vec![rat(0); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = rat(1);
        }
        FourierTable { entries }
    }

    /// I2(4): the nontrivial block acts on (δ, εδ, φ_1).
    fn builtin_bc2(table: &CharTable) -> Self {
        let mut t = Self::identity(table.num_chars());
        let d = table.char_index(&CharLabel::Delta).unwrap();
        let ed = table.char_index(&CharLabel::EpsDelta).unwrap();
        let p = table.char_index(&CharLabel::Phi(1)).unwrap();
        let h = Rat::new(1.into(), 2.into());
        let block = [
            (d, d, h.clone()),
            (d, ed, -h.clone()),
            (d, p, h.clone()),
            (ed, ed, h.clone()),
            (ed, p, h.clone()),
            (p, p, h.clone()),
        ];
        for (i, j, v) in block {
            t.entries[i][j] = v.clone();
            t.entries[j][i] = v;
        }
        FourierTable { entries: t.entries }
    }

    fn from_json(text: &str, sys: &CoxeterSystem, table: &CharTable) -> Result<Self> {
        let file: FourierFile = serde_json::from_str(text)
            .map_err(|e| crate::Error::Validation(format!("bad Fourier JSON: {e}")))?;
        let ty = CoxeterType::parse(&file.ty)?;
        if ty != sys.coxeter_type() {
            return validation(format!(
                "Fourier table is for {ty}, expected {}",
                sys.coxeter_type()
            ));
        }
        let n = table.num_chars();
        if file.labels.len() != n || file.matrix.len() != n {
            return validation("Fourier table has wrong dimensions");
        }
        // map file order to CharTable order
        let mut perm = Vec::with_capacity(n);
        for lab in &file.labels {
            let parsed = CharLabel::parse(lab, ty)?;
            let idx = table.char_index(&parsed).ok_or_else(|| {
                crate::Error::Validation(format!("unknown character label {lab}"))
            })?;
            perm.push(idx);
        }
        let mut entries = vec![vec![rat(0); n]; n];
        for (fi, row) in file.matrix.iter().enumerate() {
            if row.len() != n {
                return validation("Fourier table row has wrong length");
            }
            for (fj, s) in row.iter().enumerate() {
                let v = Rat::from_str(s).map_err(|_| {
                    crate::Error::Validation(format!("bad rational entry {s:?}"))
                })?;
                entries[perm[fi]][perm[fj]] = v;
            }
        }
        Ok(FourierTable { entries })
    }

    /// Consistency checks: symmetry, ε-twist equivariance, and reproduction
    /// of the generic degrees from the fake degrees.
    fn validate(&self, table: &CharTable, bundle: &[DegreeData]) -> Result<()> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if self.entries[i][j] != self.entries[j][i] {
                    return validation("Fourier table is not symmetric");
                }
            }
        }
        // No involution check: these blocks are restrictions of the full
        // Fourier matrices to principal-series rows, which need not square
        // to the identity once cuspidal lines are dropped.
        for i in 0..n {
            let ie = table.tensor_sign(i);
            for j in 0..n {
                let je = table.tensor_sign(j);
                if self.entries[i][j] != self.entries[ie][je] {
                    return validation("Fourier table not equivariant under sign twist");
                }
            }
        }
        for (i, d) in bundle.iter().enumerate() {
            let mut acc = CycloLaurent::new();
            for (j, e) in bundle.iter().enumerate() {
                let c = &self.entries[i][j];
                if !num_traits::Zero::is_zero(c) {
                    acc = acc.add(&CycloLaurent::from_half_laurent(&e.feg.scale(c)));
                }
            }
            if acc != d.deg {
                return validation(format!(
                    "Fourier table does not reproduce the generic degree of {}",
                    d.label
                ));
            }
        }
        Ok(())
    }
}
