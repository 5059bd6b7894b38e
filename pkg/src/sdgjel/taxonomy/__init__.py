"""JEL taxonomy snapshot and SDG catalog."""
