//! Assembles a labeled complex from command-line choices.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use cellres_core::cellcomplex::{build_periodic_complex, PeriodicCellComplex};
use cellres_core::exactmath::matrix::IntMatrix;
use cellres_core::exactmath::rational::{rat, RatVector};
use cellres_core::lattice::{quotient_grading, LatticeEmbedding, QuotientGrading};
use cellres_core::polynomial::VarNames;
use cellres_core::stratify::{anderson, ceiling, epsilon_complex, fh_p2_complex, lcm_from_vertices, Stratification};

use crate::input::{self, LatticeFile, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StratChoice {
    Ceiling,
    Anderson,
    Lcm,
    FhP2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Builtin {
    FhP2,
}

/// Everything needed to build a complex, as parsed from the command line.
#[derive(Clone, Debug, Default)]
pub struct Spec {
    pub lattice: Option<String>,
    pub mode: Option<Mode>,
    pub builtin: Option<Builtin>,
    pub strat: Option<StratChoice>,
    pub shift: Option<String>,
    pub epsilon: Option<String>,
    /// 1-based coordinate moved by `epsilon`.
    pub epsilon_coord: usize,
    pub grading: Option<String>,
    /// JSON list of vertex labels, in vertex-class order, for `lcm`.
    pub vertex_labels: Option<String>,
}

pub struct Problem {
    pub complex: PeriodicCellComplex,
    pub strat: Stratification,
    pub grading: QuotientGrading,
    pub names: VarNames,
}

pub fn lattice(spec: &Spec) -> Result<LatticeEmbedding> {
    let Some(path) = &spec.lattice else { bail!("no lattice given (use --basis, --rays, --embedding or --builtin)") };
    let file: LatticeFile = input::read_json(path)?;
    file.embedding(spec.mode)
}

pub fn names_for(l: &LatticeEmbedding) -> VarNames {
    VarNames::standard(l.n, l.lawrence_half().is_some())
}

fn coarsening(spec: &Spec) -> Result<Option<IntMatrix>> {
    spec.grading.as_deref().map(input::grading).transpose()
}

pub fn build(spec: &Spec) -> Result<Problem> {
    if spec.builtin == Some(Builtin::FhP2) || spec.strat == Some(StratChoice::FhP2) {
        if spec.lattice.is_some() || spec.shift.is_some() || spec.epsilon.is_some() {
            bail!("the fh-p2 complex is fixed; it takes no lattice, shift or epsilon");
        }
        if spec.strat.is_some_and(|s| s != StratChoice::FhP2) {
            bail!("the fh-p2 complex only carries its own stratification");
        }
        let (complex, strat) = fh_p2_complex()?;
        let g = match coarsening(spec)? {
            Some(g) => g,
            None => cellres_core::fixtures::block_diagonal(&cellres_core::fixtures::p2_pic()),
        };
        let grading = quotient_grading(&complex.lattice, Some(g))?;
        let names = names_for(&complex.lattice);
        return Ok(Problem { complex, strat, grading, names });
    }
    let l = lattice(spec)?;
    let eps = match &spec.epsilon {
        Some(e) => input::rational(e)?,
        None => rat(1, 100),
    };
    let complex = match (&spec.shift, &spec.epsilon) {
        (Some(s), _) => {
            let shift = input::rational_vector(s, &eps)?;
            if shift.0.len() != l.n {
                bail!("shift has {} coordinates, expected {}", shift.0.len(), l.n);
            }
            build_periodic_complex(&l, &shift)?
        }
        (None, Some(_)) => {
            if spec.epsilon_coord == 0 || spec.epsilon_coord > l.n {
                bail!("--epsilon-coord must lie in 1..={}", l.n);
            }
            epsilon_complex(&l, &eps, spec.epsilon_coord - 1)?
        }
        (None, None) => build_periodic_complex(&l, &RatVector::zeros(l.n))?,
    };
    let strat = match spec.strat.unwrap_or(StratChoice::Ceiling) {
        StratChoice::Ceiling => ceiling(&complex)?,
        StratChoice::Anderson => anderson(&complex)?,
        StratChoice::Lcm => {
            let Some(arg) = &spec.vertex_labels else { bail!("lcm needs --vertex-labels") };
            let labels: Vec<Vec<i64>> = input::read_json(arg)?;
            let vertices = complex.cells_of_dim(0);
            if labels.len() != vertices.len() || labels.iter().any(|u| u.len() != l.n) {
                bail!("expected {} vertex labels of length {}", vertices.len(), l.n);
            }
            let map: BTreeMap<usize, Vec<i64>> = vertices.into_iter().zip(labels).collect();
            lcm_from_vertices(&complex, &map)
        }
        StratChoice::FhP2 => unreachable!(),
    };
    let grading = quotient_grading(&l, coarsening(spec)?).context("grading")?;
    let names = names_for(&l);
    Ok(Problem { complex, strat, grading, names })
}
