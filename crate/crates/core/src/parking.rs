//! The one-way street parking process.
//!
//! Cars `1..=n` arrive in order; car `i` takes the first free spot at or past
//! its preference. Everything here is 1-based: preferences, spots and car
//! indices all live in `[n]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A tuple of `n` preferences, each in `[n]`.
///
/// The empty tuple is allowed and stands for the size-zero object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PreferenceList(Vec<usize>);

impl PreferenceList {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if let Some((i, &v)) = entries.iter().enumerate().find(|(_, &v)| v == 0 || v > n) {
            return Err(Error::EntryOutOfRange {
                position: i + 1,
                value: v,
                n,
            });
        }
        Ok(Self(entries))
    }

    /// Wraps entries already known to lie in `[n]`.
    pub(crate) fn new_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(entries.iter().all(|&v| v >= 1 && v <= entries.len()));
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.0
    }

    /// The weakly increasing rearrangement.
    pub fn sorted(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

impl TryFrom<Vec<usize>> for PreferenceList {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PreferenceList> for Vec<usize> {
    fn from(p: PreferenceList) -> Self {
        p.0
    }
}

impl AsRef<[usize]> for PreferenceList {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

/// Result of running the parking process.
///
/// `spot_of_car[i - 1]` is the spot taken by car `i`. When the process fails,
/// it stops at `first_failed_car` and `spot_of_car` only covers the cars
/// before it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParkingOutcome {
    pub spot_of_car: Vec<usize>,
    pub lucky: Vec<usize>,
    pub success: bool,
    pub first_failed_car: Option<usize>,
}

impl ParkingOutcome {
    /// Cars listed by the spot they occupy. Only meaningful on success.
    pub fn cars_by_spot(&self) -> Vec<usize> {
        let mut street = vec![0; self.spot_of_car.len()];
        for (car, &spot) in self.spot_of_car.iter().enumerate() {
            street[spot - 1] = car + 1;
        }
        street
    }

    /// `spot - preference` for each parked car.
    pub fn displacements(&self, pref: &PreferenceList) -> Vec<usize> {
        self.spot_of_car
            .iter()
            .zip(pref.entries())
            .map(|(&s, &p)| s - p)
            .collect()
    }
}

pub fn park(pref: &PreferenceList) -> ParkingOutcome {
    let n = pref.len();
    let mut occupied = vec![false; n + 1];
    let mut spot_of_car = Vec::with_capacity(n);
    let mut lucky = Vec::new();

    for (i, &want) in pref.entries().iter().enumerate() {
        match (want..=n).find(|&s| !occupied[s]) {
            Some(spot) => {
                occupied[spot] = true;
                spot_of_car.push(spot);
                if spot == want {
                    lucky.push(i + 1);
                }
            }
            None => {
                return ParkingOutcome {
                    spot_of_car,
                    lucky,
                    success: false,
                    first_failed_car: Some(i + 1),
                };
            }
        }
    }

    ParkingOutcome {
        spot_of_car,
        lucky,
        success: true,
        first_failed_car: None,
    }
}

/// Sorted characterization: the `i`-th smallest entry is at most `i`.
pub fn is_parking_function(pref: &PreferenceList) -> bool {
    pref.sorted()
        .iter()
        .enumerate()
        .all(|(i, &a)| a <= i + 1)
}

pub fn is_unit_interval_pf(pref: &PreferenceList) -> bool {
    let outcome = park(pref);
    outcome.success
        && outcome
            .spot_of_car
            .iter()
            .zip(pref.entries())
            .all(|(&s, &p)| s - p <= 1)
}

/// Cars that park exactly at their preference, ascending.
pub fn lucky_cars(pref: &PreferenceList) -> Result<Vec<usize>> {
    let outcome = park(pref);
    if !outcome.success {
        return Err(Error::NotParkingFunction);
    }
    Ok(outcome.lucky)
}
