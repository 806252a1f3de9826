#include <pybind11/pybind11.h>
PYBIND11_MODULE(_sarcctx, m) { m.doc() = "stub"; }
