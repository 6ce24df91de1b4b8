"""Cosmetic-surgery obstructions and surgery classification for cable knots."""
