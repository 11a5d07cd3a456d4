//! Correlation curves over the input fidelity for the four states of one
//! round: the Werner input ρ, the kept pair ρ′, the next-round Werner state χ
//! and the directly twirled χ′.
//!
//! Every state involved is Bell-diagonal, so all values come from the closed
//! forms. [`closed_form_point`] builds the states from the fidelity formulas;
//! [`simulated_point`] runs the full four-qubit simulation instead.

use crate::correlations::{analytic_report, CorrelationReport};
use crate::purification::{direct_twirl_fidelity, intermediate_state, purified_fidelity, simulate_round};
use crate::states::{c_from_state, CVector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Discord,
    MutualInformation,
    ClassicalCorrelation,
}

impl Quantity {
    pub const ALL: [Quantity; 3] = [Quantity::Discord, Quantity::MutualInformation, Quantity::ClassicalCorrelation];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Discord => "discord",
            Quantity::MutualInformation => "mutual_information",
            Quantity::ClassicalCorrelation => "classical_correlation",
        }
    }

    /// Short column prefix.
    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::Discord => "D",
            Quantity::MutualInformation => "I",
            Quantity::ClassicalCorrelation => "C",
        }
    }

    pub fn of(self, report: &CorrelationReport) -> f64 {
        match self {
            Quantity::Discord => report.discord,
            Quantity::MutualInformation => report.mutual_information,
            Quantity::ClassicalCorrelation => report.classical_correlation,
        }
    }
}

impl core::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s || q.symbol() == s)
            .ok_or(Error::InvalidArgument("unknown quantity"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Initial,
    Intermediate,
    Final,
    DirectTwirl,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::Initial, Stage::Intermediate, Stage::Final, Stage::DirectTwirl];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Initial => "rho",
            Stage::Intermediate => "rho_prime",
            Stage::Final => "chi",
            Stage::DirectTwirl => "chi_prime",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub f: f64,
    pub initial: CorrelationReport,
    pub intermediate: CorrelationReport,
    pub final_state: CorrelationReport,
    pub direct_twirl: CorrelationReport,
}

impl CurvePoint {
    pub fn report(&self, stage: Stage) -> &CorrelationReport {
        match stage {
            Stage::Initial => &self.initial,
            Stage::Intermediate => &self.intermediate,
            Stage::Final => &self.final_state,
            Stage::DirectTwirl => &self.direct_twirl,
        }
    }

    pub fn value(&self, stage: Stage, quantity: Quantity) -> f64 {
        quantity.of(self.report(stage))
    }

    /// Largest `|self − other|` over all stages and quantities.
    pub fn max_abs_diff(&self, other: &CurvePoint) -> f64 {
        let mut worst = 0.0f64;
        for s in Stage::ALL {
            for q in Quantity::ALL {
                worst = worst.max((self.value(s, q) - other.value(s, q)).abs());
            }
        }
        worst
    }
}

fn check_fidelity(f: f64) -> Result<()> {
    if (0.0..=1.0).contains(&f) {
        Ok(())
    } else {
        Err(Error::FidelityOutOfRange(f))
    }
}

/// States from the closed-form weights and the `F′`, `F″` recurrences.
pub fn closed_form_point(f: f64) -> Result<CurvePoint> {
    check_fidelity(f)?;
    Ok(CurvePoint {
        f,
        initial: analytic_report(&CVector::werner(f)),
        intermediate: analytic_report(&intermediate_state(f)?.c_vector()),
        final_state: analytic_report(&CVector::werner(purified_fidelity(f))),
        direct_twirl: analytic_report(&CVector::werner(direct_twirl_fidelity(f))),
    })
}

/// States from the full density-matrix simulation of the round.
pub fn simulated_point(f: f64) -> Result<CurvePoint> {
    let s = simulate_round(f)?;
    Ok(CurvePoint {
        f,
        initial: analytic_report(&c_from_state(&s.input)?),
        intermediate: analytic_report(&c_from_state(&s.intermediate)?),
        final_state: analytic_report(&c_from_state(&s.final_state)?),
        direct_twirl: analytic_report(&c_from_state(&s.direct_twirl)?),
    })
}
