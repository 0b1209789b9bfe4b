"""Explicit generators and defining relation of the SL(3,C) character variety of F2."""
