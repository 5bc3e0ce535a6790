# Project Configuration File

import os

# Application Information
APP_NAME = "levikit"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = "Exact root data, Weyl group normalizers and Clifford theory verification toolkit"

# Enumeration Caps
WEYL_ORDER_CAP = int(os.environ.get("LEVIKIT_WEYL_ORDER_CAP", 2100000))
GROUP_ORDER_CAP = int(os.environ.get("LEVIKIT_GROUP_ORDER_CAP", 20000))

# Steinberg endomorphisms
STEINBERG_POWER_BOUND = int(os.environ.get("LEVIKIT_STEINBERG_POWER_BOUND", 24))

# Character Engine
DIXON_MIN_PRIME_FACTOR = 2  # prime must exceed this multiple of sqrt(|G|)

# Logging
LOG_LEVEL = os.environ.get("LEVIKIT_LOG_LEVEL", "WARNING")
CHECKS_LOG_LEVEL = os.environ.get("LEVIKIT_CHECKS_LOG_LEVEL", "INFO")
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

# Data Paths
DATA_DIR = os.environ.get("LEVIKIT_DATA_DIR", "./data")
