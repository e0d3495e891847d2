//! Multiplication tables of `E_1 .. E_3` as text, plus CSV and JSON export.

use cdtwist::algebra::table::{Format, MultiplicationTable, DEFAULT_TABLE_CAP};
use cdtwist::Gammas;

pub fn run_example() -> cdtwist::Result<()> {
    for t in 1..=3 {
        let table = MultiplicationTable::from_oracle(t, Gammas::Symbolic, DEFAULT_TABLE_CAP)?;
        println!("E_{t}:");
        println!("{}", table.render(Format::Text));
    }

    let table = MultiplicationTable::from_oracle(2, Gammas::Symbolic, DEFAULT_TABLE_CAP)?;
    let csv = table.render(Format::Csv);
    println!("{}", csv.lines().take(6).collect::<Vec<_>>().join("\n"));
    let json = table.to_json();
    let back = MultiplicationTable::from_json(&json)?;
    assert_eq!(back, table);
    println!("json round trip: {} entries", back.entries.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("tables");
}
