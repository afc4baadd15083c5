"""
Tests de l'API FastAPI Horn Spectra
"""

import pytest
from fastapi.testclient import TestClient
from app.main import app

client = TestClient(app)

T_TUPLE = {"m": 2, "N": 2, "r": 1, "I": [2], "J": [[1], [2]]}


def test_root():
    """Test endpoint racine"""
    response = client.get("/")
    assert response.status_code == 200
    data = response.json()
    assert "message" in data
    assert "version" in data
    assert "/triples/*" in data["endpoints"].values()


def test_health():
    """Test health check"""
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_combinatorics_pi():
    """Test partition π(I)"""
    response = client.post("/combinatorics/pi", json={"I": [2, 4]})
    assert response.status_code == 200
    data = response.json()
    assert data["result"]["pi"] == [2, 1]
    assert data["result"]["weight"] == 3


def test_combinatorics_invalid_set():
    """Test ensemble non croissant → 400"""
    response = client.post("/combinatorics/pi", json={"I": [3, 2]})
    assert response.status_code == 400


def test_combinatorics_complement_sym():
    """Test bijection T_r^N → T_{N−r}^N"""
    response = client.post("/combinatorics/tuple/complement-sym", json={"horn_tuple": T_TUPLE})
    assert response.status_code == 200
    assert response.json()["result"]["label"] == "({2},{1},{2})"


def test_triples_enumerate():
    """Test énumération de T_1^2(3)"""
    response = client.post("/triples/enumerate", json={"kind": "T", "m": 2, "N": 2, "r": 1})
    assert response.status_code == 200
    data = response.json()
    assert data["report"]["count"] == 3
    assert set(data["result"]["labels"]) == {"({1},{1},{1})", "({2},{1},{2})", "({2},{2},{1})"}
    assert data["meta"]["instance_id"] == "T_2_2"


def test_triples_counts():
    """Test cardinalités sans r"""
    response = client.post("/triples/enumerate", json={"kind": "T", "m": 2, "N": 2})
    assert response.status_code == 200
    counts = {(row["N"], row["r"]): row["count"] for row in response.json()["result"]["counts"]}
    assert counts[(2, 1)] == 3
    assert counts[(0, 0)] == 1


def test_triples_cap():
    """Test plafond de ressources → 400"""
    response = client.post("/triples/enumerate", json={"kind": "T", "m": 2, "N": 3, "r": 1, "max_n": 2})
    assert response.status_code == 400


def test_triples_reduce():
    """Test réduction T̄ → T"""
    t = {"m": 2, "N": 2, "r": 1, "I": [2], "J": [[1], [1]]}
    response = client.post("/triples/reduce", json={"kind": "Tbar", "horn_tuple": t})
    assert response.status_code == 200
    assert response.json()["result"]["label"] == "({1},{1},{1})"


def test_check_finite_feasible():
    """Test balayage fini faisable"""
    response = client.post("/check/finite", json={"alpha": [2, 0], "betas": [[1, 0], [1, 0]], "N": 2})
    assert response.status_code == 200
    data = response.json()
    assert data["result"]["feasible"] is True
    assert data["result"]["trace_gap"] == 0.0
    assert data["report"]["n_violations"] == 0


def test_check_finite_violation():
    """Test balayage fini avec violations"""
    response = client.post("/check/finite", json={"alpha": [3, 0], "betas": [[1, 0], [1, 0]]})
    assert response.status_code == 200
    data = response.json()
    assert data["result"]["feasible"] is False
    assert data["report"]["n_violations"] == 2


def test_check_eval_extended():
    """Test évaluation d'une inégalité étendue"""
    full = {"m": 2, "N": 2, "r": 2, "I": [1, 2], "J": [[1, 2], [1, 2]]}
    response = client.post("/check/eval", json={
        "horn_tuple": full,
        "family": "extended",
        "q": [0, 0],
        "alpha_two_sided": {"pos": [1.0, 0.5]},
        "betas_two_sided": [{"pos": [0.5, 0.25]}, {"pos": [0.5, 0.25]}],
    })
    assert response.status_code == 200
    data = response.json()["result"]
    assert data["lhs"] == pytest.approx(1.5)
    assert data["rhs"] == pytest.approx(1.5)
    assert data["violated"] is False


def test_interpolate_tau():
    """Test τ et contraintes serrées"""
    response = client.post("/interpolate/tau", json={
        "alphaP": [1, 1], "alphaPP": [3, 1],
        "betasP": [[1, 0], [1, 0]], "betasPP": [[1, 0], [1, 0]],
    })
    assert response.status_code == 200
    data = response.json()["result"]
    assert data["tau"] == pytest.approx(1.0)
    assert data["labels"] == ["({2},{1},{2})", "({2},{2},{1})", "({1,2},{1,2},{1,2})"]


def test_interpolate_run():
    """Test interpolation réelle"""
    response = client.post("/interpolate/run", json={
        "alphaP": [1, 1], "alphaPP": [3, 1],
        "betasP": [[1, 0], [1, 0]], "betasPP": [[1, 0], [1, 0]],
    })
    assert response.status_code == 200
    data = response.json()["result"]
    assert data["alpha"] == pytest.approx([1, 1])
    assert data["betas"][0] == pytest.approx([1, 0])


def test_interpolate_hypothesis_failure():
    """Test données primées non admissibles → 400"""
    response = client.post("/interpolate/run", json={
        "alphaP": [3, 1], "alphaPP": [1, 1],
        "betasP": [[1, 0], [1, 0]], "betasPP": [[1, 0], [1, 0]],
    })
    assert response.status_code == 400


def test_interpolate_unordered_bounds():
    """Test bornes non ordonnées α′ = (1,1), α″ = (2,0)"""
    response = client.post("/interpolate/run", json={
        "alphaP": [1, 1], "alphaPP": [2, 0],
        "betasP": [[1, 0], [1, 0]], "betasPP": [[1, 0], [1, 0]],
    })
    assert response.status_code == 200
    assert response.json()["result"]["alpha"] == pytest.approx([2, 0])


def test_partial_johnson():
    """Test bornes de Johnson"""
    response = client.post("/partial/johnson", json={"betas": [[3, 1], [2, 0]], "p": 1, "N": 2})
    assert response.status_code == 200
    assert response.json()["result"]["lower"] == 3.0
    assert response.json()["result"]["upper"] == 5.0


def test_partial_check_and_realize():
    """Test données partielles faisables puis réalisation"""
    payload = {"alpha": {"spec": {"1": 4.0}}, "betas": [{"spec": {"1": 3, "2": 1}}, {"spec": {"1": 2, "2": 0}}], "N": 2}
    response = client.post("/partial/check", json=payload)
    assert response.status_code == 200
    assert response.json()["result"]["feasible"] is True

    response = client.post("/partial/realize", json=payload)
    assert response.status_code == 200
    assert response.json()["result"]["alpha"] == pytest.approx([4, 2])


def test_partial_envelope_infinities():
    """Test enveloppes avec ±∞ encodés en chaînes"""
    response = client.post("/partial/envelope", json={"partial": {"spec": {"2": 1.0}}, "N": 3})
    assert response.status_code == 200
    env = response.json()["result"]
    assert env["min"] == [1.0, 1.0, "-inf"]
    assert env["max"] == ["inf", 1.0, 1.0]


def test_witness_synthesize_and_fetch():
    """Test synthèse puis lecture d'un témoin stocké"""
    response = client.post("/witness/synthesize", json={"alpha": [1, 1], "betas": [[1, 0], [1, 0]], "seed": 0})
    assert response.status_code == 200
    data = response.json()
    witness_id = data["meta"]["instance_id"]
    assert witness_id == "witness_0_2_2"
    assert data["result"]["sum_residual"] <= 1e-8

    response = client.get(f"/witness/{witness_id}")
    assert response.status_code == 200
    assert response.json()["result"]["N"] == 2


def test_witness_not_found():
    """Test témoin inexistant → 404"""
    response = client.get("/witness/witness_inconnu")
    assert response.status_code == 404


def test_witness_lambda0():
    """Test spectre bilatère d'une matrice"""
    response = client.post("/witness/lambda0", json={"real": [[2, 0, 0], [0, -1, 0], [0, 0, 0]]})
    assert response.status_code == 200
    data = response.json()["result"]
    assert data["pos"] == pytest.approx([2.0])
    assert data["neg"] == pytest.approx([-1.0])


def test_hive_lr():
    """Test coefficient LR"""
    response = client.post("/hive/lr", json={"lam": [3, 2, 1], "mu": [2, 1], "nu": [2, 1]})
    assert response.status_code == 200
    assert response.json()["result"]["coefficient"] == 2


def test_hive_example_small():
    """Test hive explicite avec artefacts Plotly"""
    response = client.post("/hive/example", json={"W": 8, "H": 8})
    assert response.status_code == 200
    data = response.json()
    assert data["report"]["max_rhombus_violation"] <= 1e-9
    assert "hive_heatmap" in data["artifacts"]


def test_scenarios_list():
    """Test liste des scénarios"""
    response = client.get("/scenarios/list")
    assert response.status_code == 200
    names = [item["name"] for item in response.json()["result"]]
    assert "johnson" in names
    assert "sec6-violation" in names


def test_scenarios_run_johnson():
    """Test scénario johnson"""
    response = client.post("/scenarios/run/johnson")
    assert response.status_code == 200
    data = response.json()
    assert data["result"]["violated"] is False
    assert data["result"]["result"]["bounds"]["1"] == [3.0, 5.0]


def test_scenarios_unknown():
    """Test scénario inconnu → 404"""
    response = client.post("/scenarios/run/inconnu")
    assert response.status_code == 404


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
