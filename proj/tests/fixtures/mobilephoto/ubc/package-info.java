package ubc;
