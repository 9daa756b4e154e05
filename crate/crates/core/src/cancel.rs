use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::VariationalError;

/// Caller-owned cancellation flag for long symbolic computations.
///
/// Clones share the flag; the computation polls it between derivative
/// applications and returns [`VariationalError::Cancelled`] once set.
#[derive(Clone, Debug, Default)]
pub struct Cancellation(Arc<AtomicBool>);

impl Cancellation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub(crate) fn check(&self) -> Result<(), VariationalError> {
        if self.is_cancelled() {
            Err(VariationalError::Cancelled)
        } else {
            Ok(())
        }
    }
}
