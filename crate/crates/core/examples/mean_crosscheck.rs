//! Closed-form means of both fitted families across the 23 fixture subjects.

use citedist::experiments::{mean_crosscheck, SUBJECTS_2006};

fn main() {
    let check = mean_crosscheck(&SUBJECTS_2006);
    for row in &check.rows {
        println!("{:<45} {:>7.2} {:>7.2}", row.subject, row.ln_mean, row.hook_mean);
    }
    println!("{:<45} {:>7.2} {:>7.2}", "Average", check.ln_mean_avg, check.hook_mean_avg);
}
