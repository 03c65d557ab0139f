use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaKind {
    Borda,
    /// Zero within the top `t` positions, one below.
    TApproval {
        t: usize,
    },
    Custom {
        values: Vec<u64>,
    },
}

/// A misrepresentation function mapping a 1-based rank position to a
/// penalty. Always satisfies `alpha(1) == 0` and is nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissatisfactionFunction {
    kind: AlphaKind,
    // table[p - 1] = alpha(p)
    table: Vec<u64>,
}

impl DissatisfactionFunction {
    pub fn borda(m: usize) -> Self {
        DissatisfactionFunction {
            kind: AlphaKind::Borda,
            table: (0..m as u64).collect(),
        }
    }

    pub fn t_approval(m: usize, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("t-approval needs t >= 1"));
        }
        Ok(DissatisfactionFunction {
            kind: AlphaKind::TApproval { t },
            table: (1..=m).map(|p| u64::from(p > t)).collect(),
        })
    }

    pub fn custom(values: Vec<u64>) -> Result<Self> {
        match values.first() {
            None => return Err(Error::invalid("custom dissatisfaction vector is empty")),
            Some(&v) if v != 0 => {
                return Err(Error::invalid(format!(
                    "custom dissatisfaction must have alpha(1) = 0, got {v}"
                )))
            }
            _ => {}
        }
        if let Some(p) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!(
                "custom dissatisfaction decreases between positions {} and {}",
                p + 1,
                p + 2
            )));
        }
        Ok(DissatisfactionFunction {
            kind: AlphaKind::Custom {
                values: values.clone(),
            },
            table: values,
        })
    }

    /// Rebuilds the function for a candidate count; custom vectors must
    /// already have exactly `m` entries.
    pub fn for_candidates(&self, m: usize) -> Result<Self> {
        match &self.kind {
            AlphaKind::Borda => Ok(Self::borda(m)),
            AlphaKind::TApproval { t } => Self::t_approval(m, *t),
            AlphaKind::Custom { values } => {
                if values.len() != m {
                    return Err(Error::invalid(format!(
                        "custom dissatisfaction has {} entries, election has {m} candidates",
                        values.len()
                    )));
                }
                Ok(self.clone())
            }
        }
    }

    pub fn kind(&self) -> &AlphaKind {
        &self.kind
    }

    /// Number of positions this function is defined on.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Penalty at 1-based position `p`.
    #[inline]
    pub fn eval(&self, p: usize) -> u64 {
        self.table[p - 1]
    }

    pub(crate) fn check_candidates(&self, m: usize) -> Result<()> {
        if self.table.len() != m {
            return Err(Error::invalid(format!(
                "dissatisfaction function covers {} positions, election has {m} candidates",
                self.table.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for DissatisfactionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlphaKind::Borda => write!(f, "borda"),
            AlphaKind::TApproval { t } => write!(f, "{t}-approval"),
            AlphaKind::Custom { values } => {
                write!(f, "custom(")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// How per-voter dissatisfactions are combined: utilitarian sum or
/// egalitarian maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregator {
    Sum,
    Max,
}

impl Aggregator {
    pub const ALL: [Aggregator; 2] = [Aggregator::Sum, Aggregator::Max];

    /// Combines two partial objectives; `u64::MAX` acts as infinity.
    #[inline]
    pub fn combine(self, a: u64, b: u64) -> u64 {
        match self {
            Aggregator::Sum => a.saturating_add(b),
            Aggregator::Max => a.max(b),
        }
    }

    pub fn aggregate<I: IntoIterator<Item = u64>>(self, values: I) -> u64 {
        values.into_iter().fold(0, |acc, v| self.combine(acc, v))
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregator::Sum => "sum",
            Aggregator::Max => "max",
        })
    }
}

impl FromStr for Aggregator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" | "l1" => Ok(Aggregator::Sum),
            "max" | "linf" => Ok(Aggregator::Max),
            _ => Err(Error::invalid(format!("unknown aggregator '{s}'"))),
        }
    }
}
