// Every band with at most three elements: the integral algebra has an
// identity exactly when the band is connected.

use bandquiver::construct::census_up_to;
use bandquiver::support::is_connected;
use bandquiver::zalgebra::find_identity;

fn main() {
    let census = census_up_to(3).unwrap();
    let mut with_unit = 0;
    for t in &census {
        let unit = find_identity(t).unwrap();
        let connected = is_connected(t).unwrap();
        assert_eq!(unit.is_some(), connected);
        if let Some(u) = unit {
            with_unit += 1;
            println!("{:?} -> unit {}", t.rows(), u.display(t.names()));
        } else {
            println!("{:?} -> disconnected", t.rows());
        }
    }
    println!("{} bands, {} with a unit", census.len(), with_unit);
}
