"""End-to-end command-line checks, run in process via main(argv)."""

from __future__ import annotations

import json

import pytest
from modraft import (ModuleType, load_drawing_file, load_prototypes,
                     single_rod_radius, ZoneClass)
from modraft.cli import main


def run(capsys, *argv) -> "tuple[int, str, str]":
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def drawing(tmp_path, capsys):
    path = str(tmp_path / "d.json")
    code, _, _ = run(capsys, "new", path, "--extent", "0,0,800,600")
    assert code == 0
    return path


def test_version_string(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == "modraft 0.1.0 (drawing format 1)"


def test_usage_errors_exit_2(capsys, tmp_path):
    for argv in (["bogus-command"],
                 ["new", str(tmp_path / "x.json")],          # missing --extent
                 ["new", str(tmp_path / "x.json"), "--extent", "garbage"],
                 ["add", str(tmp_path / "x.json")],          # missing --type
                 ["add", str(tmp_path / "x.json"), "--type", "no-such"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2, argv


def test_new_writes_loadable_drawing(drawing):
    d = load_drawing_file(drawing)
    assert d.extent.max.x == 800
    assert d.items == []


def test_new_with_grid(tmp_path, capsys):
    path = str(tmp_path / "g.json")
    code, _, _ = run(capsys, "new", path, "--extent", "0,0,100,100",
                     "--grid", "4,2")
    assert code == 0
    d = load_drawing_file(path)
    assert (d.zone_grid.nx, d.zone_grid.ny) == (4, 2)


def test_add_parses_typed_props(drawing, capsys):
    code, out, _ = run(capsys, "add", drawing, "--type", "valve",
                       "--props", "origin=(100,50)", "mass=2.5",
                       "name=Вентиль", "note=для пара")
    assert code == 0
    assert out.strip() == "module 1 valve"
    m = load_drawing_file(drawing).module(1)
    assert (m.props["origin"].x, m.props["origin"].y) == (100.0, 50.0)
    assert m.props["mass"] == 2.5
    assert m.props["name"] == "Вентиль"
    assert m.props["note"] == "для пара"


def test_add_keeps_text_kind_values_verbatim(drawing, capsys):
    code, out, _ = run(capsys, "add", drawing, "--type", "posdes",
                       "--props", "leader_from=(0,0)", "shelf_at=(30,20)",
                       "position_text=1")
    assert code == 0
    m = load_drawing_file(drawing).module(1)
    assert m.props["position_text"] == "1"  # text, not the integer 1


def test_add_rejects_bad_props(drawing, capsys):
    code, _, err = run(capsys, "add", drawing, "--type", "valve",
                       "--props", "mass=oops")
    assert code == 1
    assert "error:" in err


def test_set_regenerates(drawing, capsys):
    run(capsys, "add", drawing, "--type", "frame",
        "--props", "format=A1", "landscape=true")
    code, _, _ = run(capsys, "set", drawing, "--id", "1",
                     "--props", "format=A0")
    assert code == 0
    m = load_drawing_file(drawing).module(1)
    assert m.props["format"] == "A0"
    assert m.props["landscape"] is True
    assert m.geometry[0].points[2].x == 1189.0


def test_set_unknown_id(drawing, capsys):
    code, _, err = run(capsys, "set", drawing, "--id", "9",
                       "--props", "mass=1.0")
    assert code == 1 and "no module with id 9" in err


def test_edit_move_rotate_mirror(drawing, capsys):
    run(capsys, "add", drawing, "--type", "valve", "--props", "origin=(10,10)")
    assert run(capsys, "edit", drawing, "--id", "1", "--move", "5,-2")[0] == 0
    m = load_drawing_file(drawing).module(1)
    assert (m.props["origin"].x, m.props["origin"].y) == (15.0, 8.0)
    assert run(capsys, "edit", drawing, "--id", "1",
               "--rotate", "0,0,90")[0] == 0
    assert load_drawing_file(drawing).module(1).props["angle_deg"] == 90.0
    assert run(capsys, "edit", drawing, "--id", "1",
               "--mirror", "0,0,90")[0] == 0
    assert load_drawing_file(drawing).module(1).props["mirrored"] is True


def test_edit_requires_exactly_one_action(drawing, capsys):
    run(capsys, "add", drawing, "--type", "valve")
    code, _, err = run(capsys, "edit", drawing, "--id", "1")
    assert code == 1 and "exactly one" in err
    code, _, err = run(capsys, "edit", drawing, "--id", "1",
                       "--move", "1,0", "--rotate", "0,0,10")
    assert code == 1 and "exactly one" in err


def test_edit_out_writes_copy(drawing, tmp_path, capsys):
    run(capsys, "add", drawing, "--type", "valve")
    out_path = str(tmp_path / "copy.json")
    run(capsys, "edit", drawing, "--id", "1", "--move", "7,0",
        "--out", out_path)
    assert load_drawing_file(drawing).module(1).props["origin"].x == 0.0
    assert load_drawing_file(out_path).module(1).props["origin"].x == 7.0


def test_list_output(drawing, capsys):
    run(capsys, "add", drawing, "--type", "valve", "--props", "origin=(10,20)")
    run(capsys, "add", drawing, "--type", "instrument",
        "--props", "function_code=PI")
    code, out, _ = run(capsys, "list", drawing)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("module 1 valve layer=0 origin=(10,20) angle=0 "
                        "mirrored=false elements=2")
    assert lines[1].startswith("module 2 instrument ")


def test_render_writes_svg(drawing, tmp_path, capsys):
    run(capsys, "add", drawing, "--type", "valve", "--props", "origin=(50,50)")
    out_path = tmp_path / "out.svg"
    code, _, _ = run(capsys, "render", drawing, "--out", str(out_path))
    assert code == 0
    svg = out_path.read_text("utf-8")
    assert svg.startswith("<?xml") and "</svg>" in svg
    # viewport + culling give identical bytes with culling on or off
    vp = tmp_path / "vp.svg"
    run(capsys, "render", drawing, "--out", str(vp),
        "--viewport", "0,0,200,200", "--cull")
    vp2 = tmp_path / "vp2.svg"
    run(capsys, "render", drawing, "--out", str(vp2),
        "--viewport", "0,0,200,200")
    assert vp.read_text("utf-8") == vp2.read_text("utf-8")


def _add_spec_modules(capsys, drawing):
    run(capsys, "add", drawing, "--type", "valve",
        "--props", "designation=15кч18п", "name=Вентиль", "mass=1.5")
    run(capsys, "add", drawing, "--type", "valve",
        "--props", "designation=15кч18п", "name=Вентиль", "mass=1.5",
        "origin=(60,0)")


def test_spec_merges_and_prints_tsv(drawing, capsys):
    _add_spec_modules(capsys, drawing)
    code, out, err = run(capsys, "spec", drawing)
    assert code == 0 and err == ""
    header, row = out.splitlines()
    assert header.split("\t") == ["position", "designation", "name",
                                  "type_mark", "unit", "qty", "mass",
                                  "price", "note"]
    cells = row.split("\t")
    assert cells[1] == "15кч18п" and cells[5] == "2" and cells[6] == "1.5"


def test_spec_missing_file_exits_1(drawing, tmp_path, capsys):
    _add_spec_modules(capsys, drawing)
    code, out, err = run(capsys, "spec", drawing, str(tmp_path / "nope.json"))
    assert code == 1
    assert len(out.splitlines()) == 2  # good file still aggregated
    assert "error:" in err and "nope.json" in err


def test_fill_table_defaults_to_drawing_itself(drawing, capsys):
    _add_spec_modules(capsys, drawing)
    run(capsys, "add", drawing, "--type", "table", "--props",
        "origin=(100,500)",
        'columns=[{"width_mm":30,"header":"поз"},{"width_mm":20,"header":"кол"}]',
        "row_height_mm=8", "header_height_mm=15", "rows=[]")
    code, out, _ = run(capsys, "fill-table", drawing, "--id", "3",
                       "--columns", "designation=0,qty=1")
    assert code == 0 and out.strip() == "filled 1 rows"
    table = load_drawing_file(drawing).module(3)
    assert list(table.props["rows"]) == [{"cells": ["15кч18п", "2"]}]


def test_check_dup(drawing, tmp_path, capsys):
    code, out, _ = run(capsys, "check-dup", drawing)
    assert code == 0 and out.strip() == "no duplicate positions"
    run(capsys, "add", drawing, "--type", "instrument",
        "--props", "function_code=PI", "pos_designation=1а")
    other = str(tmp_path / "other.json")
    run(capsys, "new", other, "--extent", "0,0,400,300")
    run(capsys, "add", other, "--type", "instrument",
        "--props", "function_code=TI", "pos_designation=1а")
    code, out, _ = run(capsys, "check-dup", drawing, other)
    assert code == 0
    assert "position '1а' used 2 times" in out
    assert drawing + "#1" in out and other + "#1" in out


def test_proto_round_trip(drawing, tmp_path, capsys):
    run(capsys, "add", drawing, "--type", "valve",
        "--props", "origin=(44,55)", "name=Кран", "mass=3.0")
    lib = str(tmp_path / "lib.json")
    code, out, _ = run(capsys, "proto-save", drawing, lib, "--entry", "1=кран")
    assert code == 0 and out.strip() == "saved 1 prototypes"
    entries, errors = load_prototypes(open(lib, "rb").read())
    assert errors == [] and entries[0][0] == "кран"
    # placement was reset on save
    assert entries[0][1].props["origin"].x == 0.0
    code, out, _ = run(capsys, "proto-load", drawing, lib, "--name", "кран",
                       "--at", "200,100", "--angle", "45")
    assert code == 0 and out.strip() == "module 2 valve"
    m = load_drawing_file(drawing).module(2)
    assert (m.props["origin"].x, m.props["origin"].y) == (200.0, 100.0)
    assert m.props["angle_deg"] == 45.0
    assert m.props["name"] == "Кран"


def test_proto_load_unknown_name(drawing, tmp_path, capsys):
    run(capsys, "add", drawing, "--type", "valve")
    lib = str(tmp_path / "lib.json")
    run(capsys, "proto-save", drawing, lib, "--entry", "1=v")
    code, _, err = run(capsys, "proto-load", drawing, lib, "--name", "нет")
    assert code == 1 and "no prototype named" in err


def test_catalog_apply(drawing, tmp_path, capsys):
    run(capsys, "add", drawing, "--type", "instrument",
        "--props", "function_code=PI")
    catalog = tmp_path / "cat.json"
    catalog.write_text(json.dumps({"entries": {"M-1": {
        "name": "Манометр", "type_mark": "МП-100",
        "manufacturer_code": "МЗ", "item_code": "1001",
        "unit": "шт", "unit_code": "796", "price": 99.5}}}), "utf-8")
    code, _, _ = run(capsys, "catalog-apply", drawing, "--id", "1",
                     "--catalog", str(catalog), "--entry", "M-1")
    assert code == 0
    m = load_drawing_file(drawing).module(1)
    assert m.props["name"] == "Манометр" and m.props["price"] == 99.5


def test_catalog_apply_unknown_entry(drawing, tmp_path, capsys):
    run(capsys, "add", drawing, "--type", "valve")
    catalog = tmp_path / "cat.json"
    catalog.write_text('{"entries": {}}', "utf-8")
    code, _, err = run(capsys, "catalog-apply", drawing, "--id", "1",
                       "--catalog", str(catalog), "--entry", "X")
    assert code == 1 and "no catalog entry" in err


def test_lightning_section_output(drawing, capsys):
    run(capsys, "add", drawing, "--type", "lightning", "--props",
        'rods=[{"x":0,"y":0,"h":10},{"x":30,"y":0,"h":6}]',
        'section_heights=[{"height":5}]', "zone_class=B", "scale_mm_per_m=2")
    code, out, _ = run(capsys, "lightning-section", drawing, "--hx", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == repr(single_rod_radius(10.0, 5.0, ZoneClass.B))
    assert lines[1] == repr(single_rod_radius(6.0, 5.0, ZoneClass.B))
    # above the short rod's apex (5.52): one radius, one refusal
    code, out, _ = run(capsys, "lightning-section", drawing, "--hx", "6")
    assert out.splitlines() == [repr(single_rod_radius(10.0, 6.0, ZoneClass.B)),
                                "no protection"]


def test_lightning_section_requires_lightning_module(drawing, capsys):
    code, _, err = run(capsys, "lightning-section", drawing, "--hx", "1")
    assert code == 1 and "no lightning module" in err
    run(capsys, "add", drawing, "--type", "valve")
    code, _, err = run(capsys, "lightning-section", drawing, "--hx", "1",
                       "--id", "1")
    assert code == 1 and "not a lightning module" in err


SIGN_ARGS = ["--person", "Иванов И.И.", "--position", "инженер",
             "--date", "2024-05-01", "--time", "14:05"]


def test_sign_and_verify_flow(drawing, capsys):
    run(capsys, "add", drawing, "--type", "valve", "--props", "origin=(10,10)")
    code, out, _ = run(capsys, "sign", drawing, *SIGN_ARGS,
                       "--password", "pw")
    assert code == 0 and out.strip() == "module 2 signature"

    code, out, _ = run(capsys, "verify", drawing)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "integrity: valid"
    assert lines[1] == ("signature 2 (Иванов И.И., инженер, 2024-05-01 14:05): "
                        "integrity valid, authenticity unchecked")

    code, out, _ = run(capsys, "verify", drawing, "--password", "pw")
    assert code == 0 and "authenticity valid" in out

    code, out, _ = run(capsys, "verify", drawing, "--password", "wrong")
    assert code == 1 and "authenticity broken" in out

    # now tamper: move the valve and re-verify
    run(capsys, "edit", drawing, "--id", "1", "--move", "1,0")
    code, out, _ = run(capsys, "verify", drawing, "--password", "pw")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "integrity: broken"
    assert "integrity broken, authenticity valid" in lines[1]


def test_verify_no_signatures(drawing, capsys):
    code, out, _ = run(capsys, "verify", drawing)
    assert code == 0
    assert out.splitlines() == ["integrity: valid", "signatures: none"]


def test_sign_validates_fields(drawing, capsys):
    code, _, err = run(capsys, "sign", drawing, "--person", " ",
                       "--position", "x", "--date", "2024-05-01",
                       "--time", "14:05", "--password", "pw")
    assert code == 1 and "person" in err


def test_second_signature_keeps_first(drawing, capsys):
    run(capsys, "add", drawing, "--type", "valve")
    run(capsys, "sign", drawing, *SIGN_ARGS, "--password", "pw1")
    run(capsys, "sign", drawing, "--person", "Петров", "--position", "ГИП",
        "--date", "2024-05-02", "--time", "09:00", "--password", "pw2")
    code, out, _ = run(capsys, "verify", drawing)
    assert code == 0
    assert out.splitlines()[0] == "integrity: valid"
    assert out.count("integrity valid") == 2
