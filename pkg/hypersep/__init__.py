__all__ = ["VERSION"]

# Keep in sync with setup.cfg.
VERSION = "0.1.0"
