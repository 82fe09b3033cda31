//! Restricted Fubini rankings and unit interval parking functions.
//!
//! * [`parking`]: the parking process, parking functions, unit interval
//!   parking functions and lucky cars.
//! * [`fubini`]: Fubini rankings, position vectors and ordered set partitions.
//! * [`blocks`]: block structure of unit interval parking functions and their
//!   order-preserving rearrangements.
//! * [`bijections`]: `phi`/`psi`, `lambda` and `gamma` with their inverses.
//! * [`restricted`]: the three restriction types, membership and generation.
//! * [`counting`]: exact closed-form counts and generating-function
//!   coefficients.
//! * [`oracle`]: exhaustive brute-force census and the cross-check suite.

pub mod bijections;
pub mod blocks;
pub mod counting;
pub mod error;
pub mod fubini;
pub mod oracle;
pub mod parking;
pub mod partitions;
pub mod restricted;

pub use error::{Error, Result};
pub use fubini::{FubiniRanking, OrderedSetPartition, PositionVector};
pub use parking::{ParkingOutcome, PreferenceList};
pub use restricted::{Family, Restriction, RestrictionSequence, RestrictionSet, Tail};
