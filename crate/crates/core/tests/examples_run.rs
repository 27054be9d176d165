//! Every example under `examples/` runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(b5_presentation);
example!(support_lattice);
example!(unit_and_connectivity);
example!(idempotents);
example!(quiver_dot);
example!(hereditary);
example!(cw_hyperplane);
example!(lattice_hnf);
example!(custom_table);
