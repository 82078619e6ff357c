use crate::error::{Error, Result};

/// Readings the allocation schemes act on: one entry per office.
#[derive(Clone, Copy, Debug)]
pub struct Snapshot<'a> {
    pub temps: &'a [f64],
    pub setpoints: &'a [f64],
    pub controls: &'a [f64],
}

impl<'a> Snapshot<'a> {
    pub fn new(temps: &'a [f64], setpoints: &'a [f64], controls: &'a [f64]) -> Result<Self> {
        if temps.is_empty() {
            return Err(Error::NoOffices);
        }
        for (what, xs) in [("setpoints", setpoints), ("controls", controls)] {
            if xs.len() != temps.len() {
                return Err(Error::LengthMismatch {
                    what,
                    got: xs.len(),
                    expected: temps.len(),
                });
            }
        }
        Ok(Snapshot {
            temps,
            setpoints,
            controls,
        })
    }

    pub fn len(&self) -> usize {
        self.temps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temps.is_empty()
    }

    pub fn mean_temp(&self) -> f64 {
        mean(self.temps)
    }

    pub fn mean_setpoint(&self) -> f64 {
        mean(self.setpoints)
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}
