//! Two-colored noncrossing partitions, the categories they generate and the
//! representation theory of the associated free easy quantum groups.

pub mod category;
pub mod fusion;
pub mod linmap;
pub mod par;
pub mod partition;
pub mod projective;
pub mod reps;


pub use category::{CategorySpec, CategoryTable, FamilyTag, Tri};
pub use partition::{compose, Color, Corner, Partition, PartitionError, PartitionStats};
