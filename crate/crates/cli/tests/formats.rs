use cuspline::formats::{
    parse_field_header, parse_triple_system, write_arrangement, write_ideal, write_points,
    write_triple_system, ArrangementFile, PointsFile,
};
use cuspline_core::arrange::{build_char2, build_char3, build_generic};
use cuspline_core::gf::FieldCtx;
use cuspline_core::realize::export_ideal;
use cuspline_core::triples::{make_mq, make_projection_matroid, TripleSystem};
use proptest::prelude::*;

fn f(p: u32, n: u32) -> FieldCtx {
    FieldCtx::new(p, n, None).unwrap()
}

#[test]
fn field_header_round_trip() {
    for (p, n) in [(2, 1), (3, 2), (2, 6), (13, 1), (5, 3)] {
        let ctx = f(p, n);
        let text = ctx.to_string();
        assert_eq!(parse_field_header(1, &text).unwrap(), ctx);
    }
    assert_eq!(f(3, 2).to_string(), "field p=3 n=2 modulus=1,0,1");
}

#[test]
fn field_header_rejections() {
    for bad in [
        "field p=3 n=2",
        "fields p=3 n=2 modulus=1,0,1",
        "field n=2 p=3 modulus=1,0,1",
        "field p=4 n=1 modulus=0,1",
        "field p=3 n=2 modulus=2,0,1",
        "field p=3 n=2 modulus=1,0,2",
        "field p=3 n=2 modulus=1,1",
        "field p=3 n=x modulus=1,0,1",
    ] {
        let err = parse_field_header(1, bad).unwrap_err();
        assert_eq!(err.line, 1, "{bad}");
    }
}

#[test]
fn arrangement_round_trip() {
    let fields = [f(3, 2), f(2, 3), f(7, 1), f(3, 3)];
    for ctx in &fields {
        let a = match ctx.characteristic() {
            3 => build_char3(ctx),
            2 => build_char2(ctx),
            _ => build_generic(ctx),
        }
        .unwrap();
        let text = write_arrangement(&a);
        let file = ArrangementFile::parse(&text).unwrap();
        assert_eq!(&file.ctx, ctx);
        assert_eq!(file.arrangement(), a);
        assert_eq!(write_arrangement(&file.arrangement()), text);
    }
}

#[test]
fn arrangement_rejections() {
    let head = "field p=3 n=1 modulus=0,1\n";
    let cases = [
        ("0 0:1:0\n1 0:1:0\n", 3, "duplicate line"),
        ("0 0:1:0\n0 1:1:0\n", 3, "duplicate label"),
        ("0 0:2:0\n", 2, "normalized"),
        ("0 0:0:0\n", 2, "zero"),
        ("0 1:3:0\n", 2, "range"),
        ("0 1:1\n", 2, "x:y:z"),
        ("0\n", 2, "<label>"),
    ];
    for (body, line, _) in cases {
        let err = ArrangementFile::parse(&format!("{head}{body}")).unwrap_err();
        assert_eq!(err.line, line, "{body:?}: {err}");
    }
    let err = ArrangementFile::parse("field p=2 n=1 modulus=0,1,1\n0 0:1:0\n").unwrap_err();
    assert_eq!(err.line, 1);
    assert!(ArrangementFile::parse("").is_err());
    assert!(ArrangementFile::parse("ground 1 2 3\n").is_err());
}

#[test]
fn points_round_trip() {
    let ctx = f(2, 4);
    let a = build_char2(&ctx).unwrap();
    let text = write_points(&ctx, &a.dual_points());
    let file = PointsFile::parse(&text).unwrap();
    assert_eq!(file.points(), a.dual_points());
    assert_eq!(write_points(&file.ctx, &file.points()), text);
    assert_eq!(
        PointsFile::parse("field p=2 n=1 modulus=0,1\n0:1:1\n1:1:0\n0:1:2\n")
            .unwrap_err()
            .line,
        4
    );
}

#[test]
fn triple_system_round_trip() {
    for ts in [
        make_projection_matroid(3).unwrap(),
        make_mq(&f(3, 2)).unwrap(),
    ] {
        let text = write_triple_system(&ts);
        assert_eq!(parse_triple_system(&text).unwrap(), ts);
    }
    let fano = write_triple_system(&make_projection_matroid(3).unwrap());
    assert!(fano.starts_with("ground 1 2 3 4 5 6 7\n1 2 3\n1 4 5\n"));
}

#[test]
fn triple_system_rejections() {
    let cases = [
        ("ground 1 2 3\n1 3 2\n", 2),
        ("ground 1 2 3 4\n2 3 4\n1 2 3\n", 3),
        ("ground 1 2 3\n1 2 3\n1 2 3\n", 3),
        ("ground 1 2 3\n1 2 4\n", 2),
        ("ground 1 2 2\n", 1),
        ("grounds 1 2 3\n", 1),
        ("ground 1 2 3\n1 2\n", 2),
        ("ground 1 2 x\n", 1),
    ];
    for (text, line) in cases {
        let err = parse_triple_system(text).unwrap_err();
        assert_eq!(err.line, line, "{text:?}: {err}");
    }
}

#[test]
fn ideal_file_layout() {
    let ts = TripleSystem::new(vec![1, 2, 3], [[1, 2, 3]]).unwrap();
    let text = write_ideal(&ts, &export_ideal(&ts, false).unwrap());
    assert_eq!(
        text,
        "ring vars=x1,x2,x3,y1,y2,y3,z1,z2,z3\n== vanishing ==\n\
         x1*y2*z3 - x1*y3*z2 - x2*y1*z3 + x2*y3*z1 + x3*y1*z2 - x3*y2*z1\n== nonvanishing ==\n"
    );
    let fano = make_projection_matroid(3).unwrap();
    let text = write_ideal(&fano, &export_ideal(&fano, true).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[1],
        "normalization=frame 1=1:0:0 2=0:1:0 4=0:0:1 7=1:1:1"
    );
    let van = lines.iter().position(|l| *l == "== vanishing ==").unwrap();
    let non = lines
        .iter()
        .position(|l| *l == "== nonvanishing ==")
        .unwrap();
    assert_eq!((non - van - 1, lines.len() - non - 1), (7, 28));
}

fn arbitrary_ts() -> impl Strategy<Value = TripleSystem> {
    (3usize..9)
        .prop_flat_map(|m| {
            let labels = proptest::collection::btree_set(-50i64..50, m);
            let picks = proptest::collection::vec(any::<bool>(), m * (m - 1) * (m - 2) / 6);
            (labels, picks)
        })
        .prop_map(|(labels, picks)| {
            let ground: Vec<i64> = labels.into_iter().rev().collect();
            let mut sorted = ground.clone();
            sorted.sort_unstable();
            let mut triples = Vec::new();
            let mut k = 0;
            for i in 0..sorted.len() {
                for j in i + 1..sorted.len() {
                    for l in j + 1..sorted.len() {
                        if picks[k] {
                            triples.push([sorted[i], sorted[j], sorted[l]]);
                        }
                        k += 1;
                    }
                }
            }
            TripleSystem::new(ground, triples).unwrap()
        })
}

proptest! {
    #[test]
    fn triple_system_text_round_trips(ts in arbitrary_ts()) {
        let text = write_triple_system(&ts);
        let back = parse_triple_system(&text).unwrap();
        prop_assert_eq!(write_triple_system(&back), text);
        prop_assert_eq!(back, ts);
    }
}
