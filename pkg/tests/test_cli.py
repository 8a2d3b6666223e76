import re

import pytest

from constants import BACKEND_SCRATCH, ROLE_MPK, ROLE_MSK, ROLE_PRI, ROLE_PRI_SEALED
from data.store import TagIndexedStore
from main import run_command
from schemes.spchs import ScratchSpchs
from utils.keyfiles import read_key_file


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("SPCHS_PRI_KEY", raising=False)
    monkeypatch.delenv("SPCHS_DEBUG", raising=False)
    return tmp_path


def _ordinals(output):
    """Ordinals printed under each structure heading."""
    lines = output.splitlines()
    found = []
    for i, line in enumerate(lines):
        if line.startswith("📊 Structure"):
            found += [int(x) for x in lines[i + 1].split()]
    return found


def _keywords(path, *words):
    path.write_text("# keywords\n" + "\n".join(words) + "\n\n", encoding="utf-8")
    return str(path)


def _setup_structure(workdir, backend="scratch", seed="1"):
    assert run_command(["setup", "--mpk", "mpk.key", "--msk", "msk.key", "--backend", backend, "--seed", seed]) == 0
    assert run_command(["struct-init", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key", "--seed", seed + "0"]) == 0


def test_setup_writes_reloadable_keys(workdir, capsys):
    assert run_command(["setup", "--mpk", "mpk.key", "--msk", "msk.key", "--seed", "5"]) == 0
    assert "✅" in capsys.readouterr().out

    scheme = ScratchSpchs()
    _, backend, mpk_body = read_key_file(workdir / "mpk.key", ROLE_MPK)
    _, _, msk_body = read_key_file(workdir / "msk.key", ROLE_MSK)
    assert backend == BACKEND_SCRATCH
    mpk, msk = scheme.decode_public_key(mpk_body), scheme.decode_secret_key(msk_body)
    assert mpk.P == scheme.group.g1_mul(scheme.group.g1, msk.s)


def test_same_seed_gives_same_keys(workdir):
    run_command(["setup", "--mpk", "a.key", "--msk", "a.sk", "--seed", "9"])
    run_command(["setup", "--mpk", "b.key", "--msk", "b.sk", "--seed", "9"])
    assert (workdir / "a.key").read_bytes() == (workdir / "b.key").read_bytes()


@pytest.mark.parametrize("backend", ["scratch", "generic"])
def test_encrypt_then_search_end_to_end(workdir, capsys, backend):
    _setup_structure(workdir, backend)
    words = _keywords(workdir / "words.txt", "invoice", "report", "invoice", "report", "invoice")
    assert run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                        "--store", "db.spchsdb", "--keyword", words]) == 0
    assert run_command(["trapdoor", "--msk", "msk.key", "--keyword", "invoice", "--out", "t.key"]) == 0
    capsys.readouterr()

    assert run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key"]) == 0
    out = capsys.readouterr().out
    assert _ordinals(out) == [0, 2, 4]
    assert "✅ 3 matching ciphertext(s)" in out


def test_encrypt_appends_and_continues_chains(workdir, capsys):
    _setup_structure(workdir)
    first = _keywords(workdir / "first.txt", "invoice")
    second = _keywords(workdir / "second.txt", "report", "invoice")
    for words in (first, second):
        assert run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                            "--store", "db.spchsdb", "--keyword", words]) == 0
    run_command(["trapdoor", "--msk", "msk.key", "--keyword", "invoice", "--out", "t.key"])
    capsys.readouterr()
    run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key", "--pub", "pub.key"])
    assert _ordinals(capsys.readouterr().out) == [0, 2]


def test_trapdoor_from_another_master_key_finds_nothing(workdir, capsys):
    _setup_structure(workdir)
    words = _keywords(workdir / "words.txt", "invoice", "invoice")
    run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                 "--store", "db.spchsdb", "--keyword", words])
    run_command(["setup", "--mpk", "other.key", "--msk", "other.sk", "--seed", "77"])
    run_command(["trapdoor", "--msk", "other.sk", "--keyword", "invoice", "--out", "t.key"])
    capsys.readouterr()

    assert run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key"]) == 0
    out = capsys.readouterr().out
    assert _ordinals(out) == []
    assert "✅ 0 matching ciphertext(s)" in out


def test_sealed_private_part(workdir, monkeypatch, capsys):
    monkeypatch.setenv("SPCHS_PRI_KEY", "ab" * 32)
    _setup_structure(workdir)
    role, _, _ = read_key_file(workdir / "pri.key", (ROLE_PRI, ROLE_PRI_SEALED))
    assert role == ROLE_PRI_SEALED

    words = _keywords(workdir / "words.txt", "invoice")
    assert run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                        "--store", "db.spchsdb", "--keyword", words]) == 0
    role, _, _ = read_key_file(workdir / "pri.key", (ROLE_PRI, ROLE_PRI_SEALED))
    assert role == ROLE_PRI_SEALED

    monkeypatch.setenv("SPCHS_PRI_KEY", "cd" * 32)
    capsys.readouterr()
    assert run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                        "--store", "db.spchsdb", "--keyword", words]) == 1
    assert "❌ --pri" in capsys.readouterr().out


def test_missing_file_names_the_flag(workdir, capsys):
    assert run_command(["search", "--mpk", "nope.key", "--store", "db", "--trapdoor", "t"]) == 1
    assert "❌ --mpk" in capsys.readouterr().out


def test_wrong_key_role_names_the_flag(workdir, capsys):
    _setup_structure(workdir)
    capsys.readouterr()
    assert run_command(["trapdoor", "--msk", "mpk.key", "--keyword", "w", "--out", "t.key"]) == 1
    assert re.search(r"❌ --msk: expected a master secret key", capsys.readouterr().out)


def test_corrupt_store_names_the_flag(workdir, capsys):
    _setup_structure(workdir)
    run_command(["trapdoor", "--msk", "msk.key", "--keyword", "w", "--out", "t.key"])
    (workdir / "db.spchsdb").write_bytes(b"SPCHSDB1\x01")
    capsys.readouterr()
    assert run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key"]) == 1
    assert "❌ --store" in capsys.readouterr().out


def test_unknown_subcommand_is_a_usage_error(workdir):
    assert run_command(["frobnicate"]) == 2
    assert run_command([]) == 2
    assert run_command(["setup", "--mpk", "only.key"]) == 2


def test_bad_seed_is_rejected(workdir, capsys):
    assert run_command(["setup", "--mpk", "a", "--msk", "b", "--seed", "abc"]) == 1
    assert "❌ --seed" in capsys.readouterr().out


def test_reused_seed_keeps_chains_fresh(workdir, capsys):
    _setup_structure(workdir)
    words = _keywords(workdir / "words.txt", "invoice")
    for _ in range(3):
        assert run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                            "--store", "db.spchsdb", "--keyword", words, "--seed", "5"]) == 0
    run_command(["trapdoor", "--msk", "msk.key", "--keyword", "invoice", "--out", "t.key"])
    capsys.readouterr()
    assert run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key"]) == 0
    assert _ordinals(capsys.readouterr().out) == [0, 1, 2]


def test_seeded_encrypt_is_reproducible(workdir):
    _setup_structure(workdir)
    pri = (workdir / "pri.key").read_bytes()
    words = _keywords(workdir / "words.txt", "invoice", "report")
    outputs = []
    for _ in range(2):
        (workdir / "pri.key").write_bytes(pri)
        (workdir / "db.spchsdb").unlink(missing_ok=True)
        run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                     "--store", "db.spchsdb", "--keyword", words, "--seed", "8"])
        outputs.append((workdir / "db.spchsdb").read_bytes())
    assert outputs[0] == outputs[1]


def test_failed_private_write_leaves_store_untouched(workdir, mocker, capsys):
    _setup_structure(workdir)
    words = _keywords(workdir / "words.txt", "invoice", "invoice")
    args = ["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
            "--store", "db.spchsdb", "--keyword", words]
    pri_before = (workdir / "pri.key").read_bytes()

    mocker.patch("commands.encrypt.write_structure_private", side_effect=OSError("disk full"))
    assert run_command(args) == 1
    assert not (workdir / "db.spchsdb").exists()
    assert (workdir / "pri.key").read_bytes() == pri_before
    assert list(workdir.glob("*.tmp")) == []

    mocker.stopall()
    assert run_command(args) == 0
    run_command(["trapdoor", "--msk", "msk.key", "--keyword", "invoice", "--out", "t.key"])
    capsys.readouterr()
    run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key"])
    assert _ordinals(capsys.readouterr().out) == [0, 1]


def test_trapdoor_keyword_is_read_like_a_list_line(workdir, capsys):
    _setup_structure(workdir)
    words = _keywords(workdir / "words.txt", "  invoice  ", "report")
    run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                 "--store", "db.spchsdb", "--keyword", words])
    assert run_command(["trapdoor", "--msk", "msk.key", "--keyword", " invoice ", "--out", "t.key"]) == 0
    capsys.readouterr()
    run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key"])
    assert _ordinals(capsys.readouterr().out) == [0]


@pytest.mark.parametrize("keyword", ["#tag", "   "])
def test_trapdoor_rejects_keywords_a_list_cannot_hold(workdir, capsys, keyword):
    _setup_structure(workdir)
    capsys.readouterr()
    assert run_command(["trapdoor", "--msk", "msk.key", "--keyword", keyword, "--out", "t.key"]) == 1
    assert "❌ --keyword" in capsys.readouterr().out
    assert not (workdir / "t.key").exists()


def test_bad_stored_label_names_the_store(workdir, capsys):
    _setup_structure(workdir)
    words = _keywords(workdir / "words.txt", "invoice")
    run_command(["encrypt", "--mpk", "mpk.key", "--pri", "pri.key", "--pub", "pub.key",
                 "--store", "db.spchsdb", "--keyword", words])
    store = TagIndexedStore.load(workdir / "db.spchsdb")
    store.insert(b"\x01" * 32, b"payload", b"not a structure")
    store.persist(workdir / "db.spchsdb")
    run_command(["trapdoor", "--msk", "msk.key", "--keyword", "invoice", "--out", "t.key"])
    capsys.readouterr()

    assert run_command(["search", "--mpk", "mpk.key", "--store", "db.spchsdb", "--trapdoor", "t.key"]) == 1
    out = capsys.readouterr().out
    assert "❌ --store: invalid structure public part" in out
    assert "--pub" not in out
