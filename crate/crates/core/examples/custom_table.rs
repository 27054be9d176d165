// Loading a band from a JSON Cayley table: here the right zero band with an
// identity adjoined, which is connected although the right zero band is not.

use bandquiver::band::MulTable;
use bandquiver::report::{analyze, present, to_json_string};
use bandquiver::zalgebra::LiftMode;

const TABLE: &str = r#"{
  "n": 3,
  "table": [[0, 1, 2], [1, 1, 2], [2, 1, 2]],
  "names": ["1", "x", "y"]
}"#;

fn main() {
    let t = MulTable::from_json(TABLE).unwrap();
    let a = analyze(&t).unwrap();
    println!("connected: {}, unit: {:?}", a.connected, a.unit.map(|u| u.display));
    let p = present(&t, LiftMode::Auto, None).unwrap();
    print!("{}", p.render_text());
    let json = to_json_string(&p).unwrap();
    println!("report is {} bytes of JSON", json.len());
}
