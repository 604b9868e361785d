import os
from pathlib import Path

# --- Physical constants (internal units: cm^-1, ps, rad/ps, Angstrom, Debye, K) ---
CONSTANTS_VERSION = "2024.1"

HBAR_CM1_PS = 5.3088            # reduced Planck constant, cm^-1 * ps
KB_CM1_PER_K = 0.69504          # Boltzmann constant, cm^-1 / K
DEBYE_C_M = 3.33564e-30         # 1 Debye in C*m
EPS0_F_PER_M = 8.8542e-12       # vacuum permittivity, F/m
HC_J_CM = 1.98644586e-23        # h*c, J per cm^-1
EV_J = 1.602176634e-19          # 1 eV in J
ANGSTROM_M = 1e-10
MEV_CM1 = 1e-3 * EV_J / HC_J_CM  # 1 meV in cm^-1

CONSTANTS_TABLE = {
    "hbar_cm1_ps": HBAR_CM1_PS,
    "kb_cm1_per_k": KB_CM1_PER_K,
    "debye_c_m": DEBYE_C_M,
    "eps0_f_per_m": EPS0_F_PER_M,
    "hc_j_cm": HC_J_CM,
    "ev_j": EV_J,
}

# --- Locations and numerical defaults ---
REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = Path(os.getenv("CHROMO_DATA_DIR", REPO_ROOT / "data"))
CONFIG_DIR = Path(os.getenv("CHROMO_CONFIG_DIR", REPO_ROOT / "config"))

SOLVATION_TABLE_PATH = DATA_DIR / "solvation_table.csv"
ENERGY_SCALES_PATH = DATA_DIR / "energy_scales.csv"
TIMESCALES_PATH = DATA_DIR / "timescales.csv"
MEDIA_PRESETS_PATH = CONFIG_DIR / "media.json"
DEFAULT_CONFIG_PATH = CONFIG_DIR / "defaults.yaml"

DEFAULT_RTOL = float(os.getenv("CHROMO_RTOL", "1e-7"))
LOG_LEVEL = os.getenv("CHROMO_LOG_LEVEL", "WARNING")
