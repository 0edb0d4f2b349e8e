use serde::Serialize;

/// Outcome of a decision procedure: a witness when the property holds, a
/// refutation record when it does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "snake_case")]
pub enum Decision<W, F> {
    Holds(W),
    Fails(F),
}

impl<W, F> Decision<W, F> {
    pub fn holds(&self) -> bool {
        matches!(self, Decision::Holds(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Holds(w) => Some(w),
            Decision::Fails(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&F> {
        match self {
            Decision::Holds(_) => None,
            Decision::Fails(f) => Some(f),
        }
    }
}
