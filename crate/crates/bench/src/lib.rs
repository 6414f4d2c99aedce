pub use pschur;
