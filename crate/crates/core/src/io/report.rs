use crate::model::Ratio;

pub const CSV_HEADER: [&str; 10] = [
    "set",
    "instance",
    "alg",
    "bins",
    "reference",
    "ratio",
    "elapsed_micros",
    "probes",
    "r",
    "seed",
];

/// One (instance, algorithm) benchmark result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub set_name: String,
    pub instance_name: String,
    pub algorithm: String,
    pub bins: usize,
    pub reference: usize,
    pub ratio: Ratio,
    pub elapsed_micros: u64,
    pub probes: u64,
    /// Scale parameter; 0 for algorithms other than `a2`.
    pub r: usize,
    /// Seed; 0 for algorithms other than `a2`.
    pub seed: u64,
}

/// Records as CSV, header first, ratios to four decimal places.
pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("writing to memory");
    for rec in records {
        w.write_record([
            rec.set_name.clone(),
            rec.instance_name.clone(),
            rec.algorithm.clone(),
            rec.bins.to_string(),
            rec.reference.to_string(),
            rec.ratio.to_string(),
            rec.elapsed_micros.to_string(),
            rec.probes.to_string(),
            rec.r.to_string(),
            rec.seed.to_string(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv of utf-8 fields")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(bins: usize, reference: usize) -> BenchRecord {
        BenchRecord {
            set_name: "bp1".into(),
            instance_name: "u120_00".into(),
            algorithm: "ffd".into(),
            bins,
            reference,
            ratio: Ratio::new(bins, reference).unwrap(),
            elapsed_micros: 12,
            probes: 345,
            r: 0,
            seed: 0,
        }
    }

    #[test]
    fn header_only() {
        assert_eq!(
            write_csv(&[]),
            "set,instance,alg,bins,reference,ratio,elapsed_micros,probes,r,seed\n"
        );
    }

    #[test]
    fn rows_in_order() {
        let csv = write_csv(&[record(49, 48), record(48, 48)]);
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(
            rows,
            vec![
                "bp1,u120_00,ffd,49,48,1.0208,12,345,0,0",
                "bp1,u120_00,ffd,48,48,1.0000,12,345,0,0"
            ]
        );
    }
}
