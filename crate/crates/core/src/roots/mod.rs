pub mod complex;
pub mod zeros;
