//! Cantor space as one-sided binary sequences with `d(x,y) = 2^-i`, `i` the
//! first index of disagreement: dyadic values, clopen sets and partitions,
//! continuous maps as prefix transducers, and uniform distance certificates.

mod bits;
mod clopen;
mod distance;
mod dyadic;
mod homeo;
mod point;
mod transducer;

pub use bits::{bits, Bits};
pub use clopen::{clopen_normalize, depth_partition, CPartition, ClopenSet, PartLookup};
pub use distance::{modulus_delta, sup_distance, DistanceCertificate};
pub use dyadic::{DyadicRational, DyadicValue};
pub use homeo::{clopen_homeo, clopen_matching};
pub use point::{apply, point_distance, CantorPoint};
pub use transducer::{
    CylinderRecoding, Kind, Rule, TableJson, TableMap, Transducer, DEFAULT_MAX_DEPTH,
};
