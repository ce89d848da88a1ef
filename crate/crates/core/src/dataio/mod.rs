//! LIBSVM datasets and trace persistence.

mod libsvm;
mod trace_csv;

pub use libsvm::{parse_libsvm, read_libsvm, to_libsvm_string, write_libsvm, SparseDataset};
pub use trace_csv::{
    meta_path, read_meta, read_trace_csv, read_trace_records, trace_csv_string, write_trace_csv, write_trace_records,
    TraceMeta, TRACE_COLUMNS,
};
