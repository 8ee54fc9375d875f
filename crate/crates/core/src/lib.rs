pub mod error;
pub mod exact_num;
pub mod curve_bundles;
pub mod seshadri_calculus;
pub mod curve_products;
pub mod jet_bounds;
