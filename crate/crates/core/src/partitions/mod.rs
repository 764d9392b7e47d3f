//! Intersection arrays of uniform partitions.
//!
//! A `(k, l)`-partition splits `[kl]` into `k` parts of size `l`. For `t`
//! partitions the intersection tensor records the size of every `t`-wise part
//! intersection. The stabiliser of the partitions in `S_{kl}` is
//! `(∏ Sym(cells)) : K_A`, where `K_A` is the group of coordinatewise index
//! permutations fixing the tensor, so its order is `|K_A| ∏ a!`.
//!
//! ```
//! use greedy_bases::partitions::{intersection_tensor, stab_order, KLPartition};
//!
//! let p = KLPartition::new(vec![vec![1, 2], vec![3, 4], vec![5, 6]]).unwrap();
//! let q = KLPartition::new(vec![vec![6, 1], vec![2, 3], vec![4, 5]]).unwrap();
//! let n = intersection_tensor(&[p, q]).unwrap();
//! assert_eq!(n.rows(), vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
//! assert_eq!(stab_order(&n).unwrap(), 6u32.into());
//! ```

mod key;
mod logfacts;
mod min_array;
mod minn;
mod named;
mod partition;
mod realize;
mod symmetry;
mod tensor;
mod trivstab;

pub use key::{continue_key, iterate_key, lemma_key_check, KeyCheck, KeyState, KeyStep};
pub use logfacts::{logfacts_check, logfacts_sweep};
pub use min_array::{canonical_representative, min_2array, min_3array, ArrayClass, MinArrayResult};
pub use minn::{all_sequences, min_factorial_product, MultiplicitySeq};
pub use named::{named_array, named_array_star, NamedFamily};
pub use partition::KLPartition;
pub use realize::{realize2, realize3};
pub use symmetry::{array_symmetries, entry_factorials, stab_order, theta, ArraySymmetry, MAX_LISTED};
pub use tensor::{intersection_tensor, IntersectionTensor};
pub use trivstab::{trivstab_construct, trivstab_instance, TrivstabReport};
