//! Exact computer algebra for the Sergeev superalgebra H^c_r, the queer Schur
//! superalgebra Q(n,r) and a degreewise realization of U(q_n).

pub mod scalars;
pub mod symgroup;
pub mod superindex;
pub mod sergeev;
pub mod linalg;
pub mod qschur;
pub mod identities;
pub mod blm;
pub mod cli;
