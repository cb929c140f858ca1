"""Command-line front end for domdim."""
