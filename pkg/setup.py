import setuptools

with open("README.md") as f:
	long_description = f.read()

setuptools.setup(
	name = "uospost",
	packages = setuptools.find_packages(exclude = [ "tests" ]),
	version = "0.1.0",
	license = "gpl-3.0",
	description = "Union-of-subspaces modeling, sparse projection and robust PCA enhancement of class-conditional posteriors",
	long_description = long_description,
	long_description_content_type = "text/markdown",
	keywords = [ "posterior", "sparse coding", "dictionary learning", "robust pca", "speech recognition" ],
	python_requires = ">=3.10",
	install_requires = [
		"numpy>=1.23",
		"scipy>=1.9",
	],
	extras_require = {
		"test": [
			"pytest",
		],
	},
	entry_points = {
		"console_scripts": [
			"uospost = uospost.__main__:main"
		]
	},
	include_package_data = True,
	classifiers = [
		"Development Status :: 4 - Beta",
		"Intended Audience :: Science/Research",
		"License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
		"Programming Language :: Python :: 3",
		"Programming Language :: Python :: 3 :: Only",
		"Programming Language :: Python :: 3.10",
		"Topic :: Scientific/Engineering",
	],
)
