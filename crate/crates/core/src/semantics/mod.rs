//! Concrete categories to evaluate diagrams in: matrices and tensors over a
//! rig, and functions on tuples of values.

mod function;
mod matrix;
mod rig;
mod tensor;

pub use function::{
    builtin, eval_function, fixpoint, fixpoint_trace, FnArrow, FunctionCategory, FunctionModel, Kind, Value, Wire,
    BUILTINS,
};
pub use matrix::{bool_closure_trace, direct_sum, MatrixCategory, RigMatrix};
pub use rig::{Poly, Rig};
pub use tensor::{bool_negation_bubble, eval_tensor, partial_trace, DimWord, RigTensor, TensorCategory, TensorModel};
