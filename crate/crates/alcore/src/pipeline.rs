use std::sync::Arc;

use newforms::{FixtureStore, NewformError};

use crate::{block_numerics, diamond_matrices, numeric_w, reconstruct_w, verify_w, ALMatrix, AlError, Space, VerifyReport, ZBasis};

/// Working precision starts at `initial_bits` and doubles on every failed
/// attempt, at most `max_escalations` times.
#[derive(Clone, Copy, Debug)]
pub struct PrecisionPolicy {
    pub initial_bits: u32,
    pub max_escalations: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { initial_bits: 128, max_escalations: 8 }
    }
}

/// Builds the basis and diamond matrices, then approximates and rounds `W`
/// with increasing precision until every exact check passes.
pub fn compute_al_matrix(space: &Space, store: &FixtureStore, policy: PrecisionPolicy) -> Result<(ALMatrix, VerifyReport), AlError> {
    let basis = Arc::new(ZBasis::build(space, store)?);
    let rep = diamond_matrices(&basis)?;
    let mut bits = policy.initial_bits;
    let mut last = String::new();
    let mut inconsistent = false;
    for attempt in 0..=policy.max_escalations {
        if attempt > 0 {
            bits *= 2;
        }
        let nums = match block_numerics(&basis, bits) {
            Ok(n) => n,
            Err(AlError::Newform(NewformError::InsufficientCoefficients { needed, available })) => {
                return Err(AlError::PrecisionExhausted {
                    attempts: attempt + 1,
                    bits,
                    reason: format!("pseudo-eigenvalues need {needed} coefficients, fixtures store {available}"),
                });
            }
            Err(e) => return Err(e),
        };
        let numw = numeric_w(&basis, &nums, bits)?;
        match reconstruct_w(&numw, &rep, &basis, bits) {
            Ok(al) => {
                let report = verify_w(&al);
                if report.passed() {
                    return Ok((al, report));
                }
                inconsistent = true;
                last = report.failures().iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ");
            }
            Err(AlError::Precision { reason, .. }) => {
                inconsistent = false;
                last = reason;
            }
            Err(e) => return Err(e),
        }
    }
    if inconsistent {
        Err(AlError::Inconsistent(format!("checks failed at {bits} bits: {last}")))
    } else {
        Err(AlError::PrecisionExhausted { attempts: policy.max_escalations + 1, bits, reason: last })
    }
}
