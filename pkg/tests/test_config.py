import math

import pytest

from mobell import config as cfg
from mobell.exceptions import ConfigError
from mobell.units import GHZ, KHZ, MHZ, TWO_PI


class TestParsing:
    def test_empty_text_gives_defaults(self):
        params = cfg.parse_config_text("")
        assert params == cfg.default_params()

    def test_suffixed_frequencies(self):
        params = cfg.parse_config_text("omega_m = 5GHz\ngamma_0 = 100kHz\nG_peak = 10MHz\n")
        assert params["omega_m"] == pytest.approx(5 * GHZ)
        assert params["gamma_0"] == pytest.approx(100 * KHZ)
        assert params["G_peak"] == pytest.approx(10 * MHZ)

    def test_bare_frequency_means_ghz(self):
        params = cfg.parse_config_text("omega_m = 4.6\n")
        assert params["omega_m"] == pytest.approx(4.6 * GHZ)

    def test_ordinary_frequency_key(self):
        params = cfg.parse_config_text("E_C_over_h = 200MHz\n")
        assert params["E_C_over_h"] == pytest.approx(0.2)

    def test_times(self):
        params = cfg.parse_config_text(
            "tau_pulse_ns = 20ns\nT_phi_m = 100us\nT_phi_DR = 10ms\nt_cycle_ns = 1000\n"
        )
        assert params["tau_pulse_ns"] == 20.0
        assert params["T_phi_m"] == 100e3
        assert params["T_phi_DR"] == 10e6
        assert params["t_cycle_ns"] == 1000.0

    def test_comments_and_blank_lines(self):
        params = cfg.parse_config_text("# header\n\nn_b = 0.5  # inline\n")
        assert params["n_b"] == 0.5

    def test_unknown_key_with_line_number(self):
        with pytest.raises(ConfigError) as err:
            cfg.parse_config_text("omega_m = 5GHz\nbogus = 1\n")
        assert "line 2" in str(err.value)
        assert err.value.line == 2

    def test_bad_number_with_line_number(self):
        with pytest.raises(ConfigError) as err:
            cfg.parse_config_text("\n\nomega_m = fast\n")
        assert err.value.line == 3

    def test_bad_unit(self):
        with pytest.raises(ConfigError):
            cfg.parse_config_text("omega_m = 5parsec\n")
        with pytest.raises(ConfigError):
            cfg.parse_config_text("tau_pulse_ns = 3GHz\n")

    def test_missing_equals(self):
        with pytest.raises(ConfigError) as err:
            cfg.parse_config_text("omega_m 5GHz\n")
        assert err.value.line == 1

    def test_int_keys(self):
        params = cfg.parse_config_text("n_cycles = 37\nseed = 9\n")
        assert params["n_cycles"] == 37
        assert params["seed"] == 9
        with pytest.raises(ConfigError):
            cfg.parse_config_text("n_cycles = 3.5\n")

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            cfg.load_config("/nonexistent/path.cfg")


class TestBuilders:
    def test_transducer_defaults_match_device_table(self):
        p = cfg.transducer_from(cfg.default_params())
        assert p.omega_m == pytest.approx(TWO_PI * 5.0)
        assert p.gamma_0 == pytest.approx(TWO_PI * 1e-4)
        assert p.gamma_b == pytest.approx(TWO_PI * 2.5e-5)
        assert p.gamma_s == pytest.approx(TWO_PI * 2e-4)
        assert p.delta_frac == 0.8
        assert p.n_b == 1.0
        assert p.G_peak == pytest.approx(TWO_PI * 0.01)
        assert p.tau_pulse == 20.0
        assert p.kappa == pytest.approx(TWO_PI * 1.0)
        assert p.omega_q_detuned == pytest.approx(TWO_PI * 4.8)
        assert p.T_ramp == 5.0
        assert p.E_C_over_h == pytest.approx(0.2)
        assert p.g_qm == pytest.approx(TWO_PI * 0.015)
        assert p.dims == (3, 4)

    def test_transducer_with_optics(self):
        p = cfg.transducer_from(cfg.default_params(), with_optics=True)
        assert p.dims == (3, 4, 3)

    def test_hardware_defaults(self):
        h = cfg.hardware_from(cfg.default_params())
        assert h.eta_PC == 0.99
        assert h.Gamma_OM_tau == 0.1
        assert h.T_phi_m == pytest.approx(100e3)

    def test_counting_defaults(self):
        s = cfg.counting_from(cfg.default_params())
        assert s.ghz_photons == 6
        assert s.ghz_success == pytest.approx(1 / 32)
        assert s.n_fusions == 3

    def test_ring_sizes_parsing(self):
        params = cfg.default_params()
        params["ring_sizes"] = "3, 6 12"
        assert cfg.ring_sizes_from(params) == [3, 6, 12]
        params["ring_sizes"] = "x"
        with pytest.raises(ConfigError):
            cfg.ring_sizes_from(params)

    def test_opt_auto_sentinel(self):
        params = cfg.default_params()
        assert cfg.opt(params, "t_hold_ns") is None
        params["t_hold_ns"] = 42.0
        assert cfg.opt(params, "t_hold_ns") == 42.0
