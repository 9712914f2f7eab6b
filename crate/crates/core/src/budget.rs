//! Wall-clock and size guards for exponential searches.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { deadline: None }
    }

    pub fn with_time_limit(limit: Option<Duration>) -> Budget {
        Budget {
            deadline: limit.map(|d| Instant::now() + d),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn check(&self, what: &str) -> Result<()> {
        if self.expired() {
            Err(Error::Budget(format!("time limit reached during {what}")))
        } else {
            Ok(())
        }
    }
}

/// Fails with a budget error when `value > max`.
pub fn guard(what: &str, value: usize, max: usize) -> Result<()> {
    if value > max {
        Err(Error::Budget(format!("{what} = {value} exceeds the guard {max}")))
    } else {
        Ok(())
    }
}
