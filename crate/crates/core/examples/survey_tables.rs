//! Scan a range of m and print a table or a figure's data series as CSV.
//!
//! cargo run --release --example survey_tables -- 2 1000 all-first-one

use markoff::survey::{emit, scan, Emission, Format, Method, SeriesKind, TableId};

fn main() -> markoff::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let lo: u64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let hi: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let what = match args.get(2).map(String::as_str).unwrap_or("unique") {
        "by-order" => Emission::Table(TableId::MinimalByOrder),
        "unique" => Emission::Table(TableId::Unique),
        "unique-phi-nonzero" => Emission::Table(TableId::UniquePhiNonzero),
        "all-first-one" => Emission::Table(TableId::AllFirstIsOne),
        "order-counts" => Emission::Series(SeriesKind::OrderCounts),
        "cumulative-unique" => Emission::Series(SeriesKind::CumulativeUnique),
        "mod3" => Emission::Series(SeriesKind::Mod3Distribution),
        _ => Emission::Survey,
    };

    let records = scan(lo, hi, Method::Auto)?;
    print!("{}", emit(&records, lo, hi, what, Format::Csv)?);

    let violations = markoff::survey::prop_9m4_violations(&records);
    eprintln!("9m-4 divisibility violations: {violations:?}");
    Ok(())
}
